// Copyright 2026 The f2q Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Torus geometry and the physical/auxiliary qubit register layout.
 *
 * Sites are indexed row-major (rx + Lx * ry). Every site carries two qubits:
 * the physical qubit at flat index site_index and the auxiliary qubit at
 * N + site_index.
 */
#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace f2q {

enum class Direction { X, Y };
enum class System { Physical, Auxiliary };

struct Site {
    int rx = 0;
    int ry = 0;
    friend bool operator==(const Site &, const Site &) = default;
};

struct Edge {
    Site origin;
    Direction direction = Direction::X;
    friend bool operator==(const Edge &, const Edge &) = default;
};

struct QubitRef {
    Site site;
    System system = System::Physical;
    friend bool operator==(const QubitRef &, const QubitRef &) = default;
};

/**
 * @brief Lx x Ly periodic square lattice with on-site parity factor rho.
 *
 * Both extents are >= 2 and share parity. Even x even lattices use rho = +1,
 * odd x odd lattices use rho = -1.
 */
class LatticeSpec {
  public:
    LatticeSpec(int lx, int ly, int rho) : lx_(lx), ly_(ly), rho_(rho) {
        if (lx < 2 || ly < 2) {
            throw std::invalid_argument("lattice extents must be >= 2");
        }
        if ((lx % 2) != (ly % 2)) {
            throw std::invalid_argument(
                "Lx and Ly must be both odd or both even");
        }
        if (rho != 1 && rho != -1) {
            throw std::invalid_argument("rho must be +1 or -1");
        }
        if (rho != default_rho(lx)) {
            throw std::invalid_argument(lx % 2 == 0
                                            ? "even x even lattices use rho = +1"
                                            : "odd x odd lattices use rho = -1");
        }
    }

    /// rho picked from the lattice parity.
    static LatticeSpec make(int lx, int ly) {
        return LatticeSpec(lx, ly, default_rho(lx));
    }

    /**
     * Builds a spec without the rho/parity pairing check. Used for negative
     * controls (e.g. a 3x3 lattice with rho = +1); geometry checks still apply.
     */
    static LatticeSpec unchecked(int lx, int ly, int rho) {
        LatticeSpec s = make(lx, ly);
        if (rho != 1 && rho != -1) {
            throw std::invalid_argument("rho must be +1 or -1");
        }
        s.rho_ = rho;
        return s;
    }

    static constexpr int default_rho(int lx) { return lx % 2 == 0 ? 1 : -1; }

    [[nodiscard]] int lx() const { return lx_; }
    [[nodiscard]] int ly() const { return ly_; }
    [[nodiscard]] int rho() const { return rho_; }
    [[nodiscard]] int num_sites() const { return lx_ * ly_; }
    [[nodiscard]] int num_qubits() const { return 2 * lx_ * ly_; }

    [[nodiscard]] Site wrap(Site s) const {
        auto mod = [](int a, int m) { return ((a % m) + m) % m; };
        return {mod(s.rx, lx_), mod(s.ry, ly_)};
    }

    [[nodiscard]] Site shift(Site s, int dx, int dy) const {
        return wrap({s.rx + dx, s.ry + dy});
    }

    /// Inverse of site_index.
    [[nodiscard]] Site site_at(int index) const {
        return {index % lx_, index / lx_};
    }

    friend bool operator==(const LatticeSpec &, const LatticeSpec &) = default;

  private:
    int lx_;
    int ly_;
    int rho_;
};

[[nodiscard]] inline int site_index(const LatticeSpec &spec, Site s) {
    const Site w = spec.wrap(s);
    return w.rx + spec.lx() * w.ry;
}

[[nodiscard]] inline int qubit_index(const LatticeSpec &spec,
                                     const QubitRef &q) {
    const int base = site_index(spec, q.site);
    return q.system == System::Physical ? base : spec.num_sites() + base;
}

[[nodiscard]] inline int phys(const LatticeSpec &spec, Site s) {
    return qubit_index(spec, {s, System::Physical});
}

[[nodiscard]] inline int aux(const LatticeSpec &spec, Site s) {
    return qubit_index(spec, {s, System::Auxiliary});
}

/// Second endpoint of an edge (wrapped).
[[nodiscard]] inline Site edge_target(const LatticeSpec &spec, const Edge &e) {
    return e.direction == Direction::X ? spec.shift(e.origin, 1, 0)
                                       : spec.shift(e.origin, 0, 1);
}

/// True if the edge crosses the periodic boundary in its direction.
[[nodiscard]] inline bool edge_wraps(const LatticeSpec &spec, const Edge &e) {
    return e.direction == Direction::X ? e.origin.rx == spec.lx() - 1
                                       : e.origin.ry == spec.ly() - 1;
}

/**
 * All 2N edges: x-edges row-major, then y-edges row-major. On width-2
 * lattices the two wraparound edges joining the same pair stay distinct.
 */
[[nodiscard]] inline std::vector<Edge> edges(const LatticeSpec &spec) {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(2 * spec.num_sites()));
    for (Direction d : {Direction::X, Direction::Y}) {
        for (int ry = 0; ry < spec.ly(); ++ry) {
            for (int rx = 0; rx < spec.lx(); ++rx) {
                out.push_back({{rx, ry}, d});
            }
        }
    }
    return out;
}

[[nodiscard]] inline std::vector<Edge> edges(const LatticeSpec &spec,
                                             Direction d) {
    std::vector<Edge> out;
    for (const Edge &e : edges(spec)) {
        if (e.direction == d) {
            out.push_back(e);
        }
    }
    return out;
}

/// Corners (r, r+x, r+x+y, r+y) of the plaquette anchored at r.
[[nodiscard]] inline std::array<Site, 4> plaquette_sites(const LatticeSpec &spec,
                                                         Site r) {
    const Site a = spec.wrap(r);
    return {a, spec.shift(a, 1, 0), spec.shift(a, 1, 1), spec.shift(a, 0, 1)};
}

/// Anchors of the non-wrapping plaquettes, row-major.
[[nodiscard]] inline std::vector<Site>
vacuum_plaquette_set(const LatticeSpec &spec) {
    std::vector<Site> out;
    for (int ry = 0; ry < spec.ly() - 1; ++ry) {
        for (int rx = 0; rx < spec.lx() - 1; ++rx) {
            out.push_back({rx, ry});
        }
    }
    return out;
}

[[nodiscard]] inline std::string to_string(Site s) {
    return "(" + std::to_string(s.rx) + "," + std::to_string(s.ry) + ")";
}

} // namespace f2q
