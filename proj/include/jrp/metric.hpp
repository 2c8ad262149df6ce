#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace jrp {

/// Complete symmetric metric on vertices {0, 1, ..., n} where 0 is the depot
/// and 1..n are the elements (retailers).
struct Metric {
    int n = 0;              // number of non-depot vertices
    std::vector<double> w;  // (n+1)^2 distances, row-major

    double dist(int a, int b) const { return w[a * (n + 1) + b]; }

    std::vector<std::string> violations(double tol = 1e-9) const {
        std::vector<std::string> out;
        int v = n + 1;
        if (static_cast<int>(w.size()) != v * v) {
            out.push_back("matrix size mismatch");
            return out;
        }
        for (int a = 0; a < v; ++a) {
            if (std::abs(dist(a, a)) > tol)
                out.push_back("nonzero diagonal at " + std::to_string(a));
            for (int b = 0; b < v; ++b) {
                if (dist(a, b) < -tol)
                    out.push_back("negative distance (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
                if (std::abs(dist(a, b) - dist(b, a)) > tol)
                    out.push_back("asymmetric pair (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
            }
        }
        for (int a = 0; a < v; ++a)
            for (int b = 0; b < v; ++b)
                for (int c = 0; c < v; ++c)
                    if (dist(a, b) + dist(b, c) < dist(a, c) - tol) {
                        out.push_back("triangle inequality fails at (" +
                                      std::to_string(a) + "," + std::to_string(b) +
                                      "," + std::to_string(c) + ")");
                        return out;
                    }
        return out;
    }

    static Metric from_matrix(int n, std::vector<double> matrix) {
        Metric m{n, std::move(matrix)};
        auto bad = m.violations();
        if (!bad.empty())
            throw std::invalid_argument("invalid metric: " + bad.front());
        return m;
    }
};

} // namespace jrp
