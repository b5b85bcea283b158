// Copyright 2026 The fragcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fragcut/oracle.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace fragcut::oracle {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

MinCost brute_force_min_cost(const GateGraph &g) {
    const size_t n = g.num_vertices();
    if (n < 2) {
        throw std::invalid_argument("brute-force min cost needs at least two vertices");
    }
    if (n > MAX_BRUTE_FORCE_VERTICES) {
        throw std::invalid_argument("brute-force min cost is limited to 20 vertices");
    }
    MinCost best;
    best.cost = std::numeric_limits<double>::infinity();
    for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << n); mask++) {
        double side_weight[2] = {0, 0};
        for (size_t v = 0; v < n; v++) {
            side_weight[(mask >> v) & 1] += g.vertices()[v].weight;
        }
        double crossing = 0;
        for (const GraphEdge &e : g.edges()) {
            if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) {
                crossing += e.weight;
            }
        }
        double cost = crossing == 0 ? 0.0 : crossing / side_weight[0] + crossing / side_weight[1];
        if (cost < best.cost) {
            best.cost = cost;
            std::vector<uint8_t> bits(n);
            for (size_t v = 0; v < n; v++) {
                bits[v] = static_cast<uint8_t>((mask >> v) & 1);
            }
            best.partition = PartitionVector(std::move(bits));
        }
    }
    return best;
}

IsingGround brute_force_ising_ground(const IsingModel &m) {
    if (m.n > MAX_BRUTE_FORCE_SPINS) {
        throw std::invalid_argument("brute-force ground state is limited to 20 spins");
    }
    IsingGround best;
    best.energy = std::numeric_limits<double>::infinity();
    std::vector<std::tuple<size_t, size_t, double>> couplings;
    for (const auto &[key, value] : m.j) {
        couplings.emplace_back(key.first, key.second, value);
    }
    for (uint64_t mask = 0; mask < (uint64_t{1} << m.n); mask++) {
        auto spin = [&](size_t i) { return ((mask >> i) & 1) ? 1.0 : -1.0; };
        double e = m.offset;
        for (size_t i = 0; i < m.n; i++) {
            e += (i < m.h.size() ? m.h[i] : 0.0) * spin(i);
        }
        for (const auto &[a, b, value] : couplings) {
            e += value * spin(a) * spin(b);
        }
        if (e < best.energy) {
            best.energy = e;
            best.spins.assign(m.n, -1);
            for (size_t i = 0; i < m.n; i++) {
                best.spins[i] = static_cast<int8_t>(spin(i));
            }
        }
    }
    return best;
}

namespace {

const Complex I_UNIT(0, 1);

Mat2 make(Complex a, Complex b, Complex c, Complex d) {
    Mat2 m;
    m << a, b, c, d;
    return m;
}

Mat2 u3(double theta, double phi, double lambda) {
    return make(std::cos(theta / 2), -std::exp(I_UNIT * lambda) * std::sin(theta / 2),
                std::exp(I_UNIT * phi) * std::sin(theta / 2), std::exp(I_UNIT * (phi + lambda)) * std::cos(theta / 2));
}

Mat2 gate_matrix(const Gate &g) {
    const double pi = std::acos(-1.0);
    const std::string &n = g.name;
    const auto &t = g.params;
    if (n == "h") return make(1, 1, 1, -1) / std::sqrt(2.0);
    if (n == "x") return make(0, 1, 1, 0);
    if (n == "y") return make(0, -I_UNIT, I_UNIT, 0);
    if (n == "z") return make(1, 0, 0, -1);
    if (n == "s") return make(1, 0, 0, I_UNIT);
    if (n == "sdg") return make(1, 0, 0, -I_UNIT);
    if (n == "t") return make(1, 0, 0, std::polar(1.0, pi / 4));
    if (n == "tdg") return make(1, 0, 0, std::polar(1.0, -pi / 4));
    if (n == "rx") return u3(t[0], -pi / 2, pi / 2);
    if (n == "ry") return u3(t[0], 0, 0);
    if (n == "rz") return std::exp(-I_UNIT * (t[0] / 2)) * make(1, 0, 0, std::exp(I_UNIT * t[0]));
    if (n == "u1") return make(1, 0, 0, std::exp(I_UNIT * t[0]));
    if (n == "u2") return u3(pi / 2, t[0], t[1]);
    if (n == "u3") return u3(t[0], t[1], t[2]);
    throw std::invalid_argument("reference evolution does not know gate " + n);
}

// Full operator acting as `m` on qubit q and as identity elsewhere.
Eigen::MatrixXcd embed(const Mat2 &m, Qubit q, size_t width) {
    const size_t dim = size_t{1} << width;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            if ((r & ~(size_t{1} << q)) != (c & ~(size_t{1} << q))) {
                continue;
            }
            full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m((r >> q) & 1, (c >> q) & 1);
        }
    }
    return full;
}

Eigen::MatrixXcd two_qubit_operator(const Gate &g, size_t width) {
    const size_t dim = size_t{1} << width;
    const Qubit a = g.qubits[0];
    const Qubit b = g.qubits[1];
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t c = 0; c < dim; c++) {
        bool ctrl = (c >> a) & 1;
        size_t r = c;
        Complex amp = 1;
        if (g.name == "cx") {
            if (ctrl) r ^= size_t{1} << b;
        } else if (g.name == "cz") {
            if (ctrl && ((c >> b) & 1)) amp = -1;
        } else {
            throw std::invalid_argument("reference evolution does not know gate " + g.name);
        }
        full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amp;
    }
    return full;
}

void kraus(Eigen::MatrixXcd &rho, const std::vector<Mat2> &ops, Qubit q, size_t width) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const Mat2 &k : ops) {
        Eigen::MatrixXcd full = embed(k, q, width);
        next += full * rho * full.adjoint();
    }
    rho = next;
}

void idle(Eigen::MatrixXcd &rho, const NoiseProfile &p, Qubit q, double gap_ns, size_t width) {
    if (!(gap_ns > 0)) {
        return;
    }
    const double tau_us = gap_ns / 1000.0;
    const double t1 = p.t1_us(q);
    const double t2 = p.t2_us(q);
    if (std::isfinite(t1)) {
        double gamma = 1 - std::exp(-tau_us / t1);
        kraus(rho, {make(1, 0, 0, std::sqrt(1 - gamma)), make(0, std::sqrt(gamma), 0, 0)}, q, width);
    }
    double rate = 1 / t2 - (std::isfinite(t1) ? 1 / (2 * t1) : 0.0);
    if (std::isfinite(t2) && rate > 0) {
        double lambda = 1 - std::exp(-tau_us * rate);
        kraus(rho, {make(1, 0, 0, std::sqrt(1 - lambda)), make(0, 0, 0, std::sqrt(lambda))}, q, width);
    }
}

}  // namespace

ReferenceMatrix reference_density_evolution(const Circuit &c, const NoiseProfile &p) {
    const size_t w = c.width();
    if (w > MAX_REFERENCE_WIDTH) {
        throw std::invalid_argument("reference evolution is limited to 6 qubits");
    }
    const auto dim = static_cast<Eigen::Index>(size_t{1} << w);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = 1;
    std::vector<double> ready(w, 0.0);
    for (const Gate &g : c.gates()) {
        if (g.is_measurement) {
            continue;
        }
        double start = 0;
        for (Qubit q : g.qubits) {
            start = std::max(start, ready[q]);
        }
        for (Qubit q : g.qubits) {
            idle(rho, p, q, start - ready[q], w);
        }
        Eigen::MatrixXcd u = g.qubits.size() == 2 ? two_qubit_operator(g, w) : embed(gate_matrix(g), g.qubits[0], w);
        rho = u * rho * u.adjoint();
        double err = p.gate_error(g.name, g.qubits);
        if (err > 0) {
            double each = err / (3.0 * static_cast<double>(g.qubits.size()));
            std::vector<Mat2> ops{std::sqrt(1 - 3 * each) * Mat2::Identity(), std::sqrt(each) * make(0, 1, 1, 0),
                                  std::sqrt(each) * make(0, -I_UNIT, I_UNIT, 0), std::sqrt(each) * make(1, 0, 0, -1)};
            for (Qubit q : g.qubits) {
                kraus(rho, ops, q, w);
            }
        }
        double end = start + p.gate_duration_ns(g.name, g.qubits);
        for (Qubit q : g.qubits) {
            ready[q] = end;
        }
    }
    double makespan = 0;
    for (double t : ready) {
        makespan = std::max(makespan, t);
    }
    for (Qubit q = 0; q < w; q++) {
        idle(rho, p, q, makespan - ready[q], w);
    }
    return rho;
}

OracleReport compare(std::string instance, double oracle_value, double production_value, double tolerance) {
    return OracleReport{std::move(instance), oracle_value, production_value, tolerance,
                        std::abs(oracle_value - production_value) <= tolerance};
}

nlohmann::json reports_to_json(const std::vector<OracleReport> &reports) {
    nlohmann::json doc = nlohmann::json::array();
    for (const OracleReport &r : reports) {
        doc.push_back({{"instance", r.instance},
                       {"oracle", r.oracle_value},
                       {"production", r.production_value},
                       {"tolerance", r.tolerance},
                       {"agree", r.agree}});
    }
    return doc;
}

}  // namespace fragcut::oracle
