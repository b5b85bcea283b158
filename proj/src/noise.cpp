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

#include "fragcut/noise.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fragcut/error.hpp"

namespace fragcut {

using nlohmann::json;

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

double require_number(const json &obj, const char *key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ProfileError(where + ": missing field '" + key + "'");
    }
    if (!it->is_number()) {
        throw ProfileError(where + ": field '" + key + "' must be a number");
    }
    return it->get<double>();
}

std::optional<double> optional_number(const json &obj, const char *key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw ProfileError(where + ": field '" + key + "' must be a number");
    }
    return it->get<double>();
}

void check_probability(double p, const std::string &what) {
    if (!(p >= 0 && p <= 1)) {
        throw ProfileError(what + " must be a probability in [0,1], got " + std::to_string(p));
    }
}

void check_positive(double t, const std::string &what) {
    if (!(t > 0)) {
        throw ProfileError(what + " must be positive, got " + std::to_string(t));
    }
}

}  // namespace

NoiseProfile::NoiseProfile(NoiseDefaults defaults, std::map<Qubit, QubitCalibration> qubits,
                           std::map<std::pair<std::string, std::vector<Qubit>>, GateCalibration> gates)
    : defaults_(std::move(defaults)), qubits_(std::move(qubits)), gates_(std::move(gates)) {
    validate();
}

void NoiseProfile::validate() {
    check_probability(defaults_.p1, "defaults.p1");
    check_probability(defaults_.p2, "defaults.p2");
    check_positive(defaults_.d1_ns, "defaults.d1_ns");
    check_positive(defaults_.d2_ns, "defaults.d2_ns");
    if (defaults_.t1_us.has_value() != defaults_.t2_us.has_value()) {
        throw ProfileError("defaults.t1_us and defaults.t2_us must be given together");
    }
    if (defaults_.t1_us) {
        check_positive(*defaults_.t1_us, "defaults.t1_us");
        check_positive(*defaults_.t2_us, "defaults.t2_us");
        if (*defaults_.t2_us > 2 * *defaults_.t1_us) {
            warnings_.push_back("defaults: t2 exceeds 2*t1");
        }
    }
    for (const auto &[id, cal] : qubits_) {
        std::string where = "qubit " + std::to_string(id);
        check_positive(cal.t1_us, where + " t1_us");
        check_positive(cal.t2_us, where + " t2_us");
        if (cal.readout_error) {
            check_probability(*cal.readout_error, where + " readout_error");
        }
        if (cal.t2_us > 2 * cal.t1_us) {
            warnings_.push_back(where + ": t2 exceeds 2*t1");
        }
    }
    for (const auto &[key, cal] : gates_) {
        std::string where = "gate " + key.first;
        if (cal.error) {
            check_probability(*cal.error, where + " error");
        }
        if (cal.duration_ns) {
            check_positive(*cal.duration_ns, where + " duration_ns");
        }
    }
}

NoiseProfile NoiseProfile::uniform(double p1, double p2, double d1_ns, double d2_ns, std::optional<double> t1_us,
                                   std::optional<double> t2_us) {
    NoiseDefaults d;
    d.p1 = p1;
    d.p2 = p2;
    d.d1_ns = d1_ns;
    d.d2_ns = d2_ns;
    d.t1_us = t1_us;
    d.t2_us = t2_us;
    return NoiseProfile(d, {}, {});
}

NoiseProfile NoiseProfile::noiseless() {
    return uniform(0, 0, 50, 300, std::nullopt, std::nullopt);
}

Qubit NoiseProfile::physical(Qubit q) const {
    if (local_to_physical_.empty()) {
        return q;
    }
    if (q >= local_to_physical_.size()) {
        throw ProfileError("local qubit " + std::to_string(q) + " has no physical mapping");
    }
    return local_to_physical_[q];
}

const GateCalibration *NoiseProfile::find_gate(const std::string &name, std::span<const Qubit> qubits) const {
    if (gates_.empty()) {
        return nullptr;
    }
    std::vector<Qubit> phys;
    phys.reserve(qubits.size());
    for (Qubit q : qubits) {
        phys.push_back(physical(q));
    }
    auto it = gates_.find({name, phys});
    return it == gates_.end() ? nullptr : &it->second;
}

double NoiseProfile::gate_error(const std::string &name, std::span<const Qubit> qubits) const {
    const GateCalibration *cal = find_gate(name, qubits);
    if (cal != nullptr && cal->error) {
        return *cal->error;
    }
    return qubits.size() >= 2 ? defaults_.p2 : defaults_.p1;
}

double NoiseProfile::gate_duration_ns(const std::string &name, std::span<const Qubit> qubits) const {
    const GateCalibration *cal = find_gate(name, qubits);
    if (cal != nullptr && cal->duration_ns) {
        return *cal->duration_ns;
    }
    return qubits.size() >= 2 ? defaults_.d2_ns : defaults_.d1_ns;
}

double NoiseProfile::t1_us(Qubit q) const {
    auto it = qubits_.find(physical(q));
    if (it != qubits_.end()) {
        return it->second.t1_us;
    }
    return defaults_.t1_us.value_or(INF);
}

double NoiseProfile::t2_us(Qubit q) const {
    auto it = qubits_.find(physical(q));
    if (it != qubits_.end()) {
        return it->second.t2_us;
    }
    return defaults_.t2_us.value_or(INF);
}

NoiseProfile NoiseProfile::remap(std::span<const Qubit> local_to_physical) const {
    NoiseProfile out = *this;
    out.local_to_physical_.clear();
    for (Qubit q : local_to_physical) {
        out.local_to_physical_.push_back(physical(q));
    }
    return out;
}

json NoiseProfile::to_json() const {
    json doc;
    doc["version"] = 1;
    json d{{"p1", defaults_.p1}, {"p2", defaults_.p2}, {"d1_ns", defaults_.d1_ns}, {"d2_ns", defaults_.d2_ns}};
    if (defaults_.t1_us) {
        d["t1_us"] = *defaults_.t1_us;
        d["t2_us"] = *defaults_.t2_us;
    }
    doc["defaults"] = d;
    doc["qubits"] = json::array();
    for (const auto &[id, cal] : qubits_) {
        json q{{"id", id}, {"t1_us", cal.t1_us}, {"t2_us", cal.t2_us}};
        if (cal.readout_error) {
            q["readout_error"] = *cal.readout_error;
        }
        doc["qubits"].push_back(q);
    }
    doc["gates"] = json::array();
    for (const auto &[key, cal] : gates_) {
        json g{{"name", key.first}, {"qubits", key.second}};
        if (cal.error) {
            g["error"] = *cal.error;
        }
        if (cal.duration_ns) {
            g["duration_ns"] = *cal.duration_ns;
        }
        doc["gates"].push_back(g);
    }
    return doc;
}

NoiseProfile NoiseProfile::from_json(const json &doc) {
    if (!doc.is_object()) {
        throw ProfileError("profile document must be an object");
    }
    auto version = doc.find("version");
    if (version == doc.end() || !version->is_number_integer() || version->get<int>() != 1) {
        throw ProfileError("profile 'version' must be 1");
    }
    auto defaults_it = doc.find("defaults");
    if (defaults_it == doc.end() || !defaults_it->is_object()) {
        throw ProfileError("profile is missing the 'defaults' object");
    }
    NoiseDefaults d;
    d.p1 = require_number(*defaults_it, "p1", "defaults");
    d.p2 = require_number(*defaults_it, "p2", "defaults");
    d.d1_ns = require_number(*defaults_it, "d1_ns", "defaults");
    d.d2_ns = require_number(*defaults_it, "d2_ns", "defaults");
    d.t1_us = optional_number(*defaults_it, "t1_us", "defaults");
    d.t2_us = optional_number(*defaults_it, "t2_us", "defaults");

    std::map<Qubit, QubitCalibration> qubits;
    if (auto it = doc.find("qubits"); it != doc.end()) {
        if (!it->is_array()) {
            throw ProfileError("'qubits' must be an array");
        }
        for (size_t k = 0; k < it->size(); k++) {
            const json &entry = (*it)[k];
            std::string where = "qubits[" + std::to_string(k) + "]";
            if (!entry.is_object()) {
                throw ProfileError(where + " must be an object");
            }
            auto id = entry.find("id");
            if (id == entry.end() || !id->is_number_unsigned()) {
                throw ProfileError(where + ": 'id' must be a non-negative integer");
            }
            QubitCalibration cal;
            cal.t1_us = require_number(entry, "t1_us", where);
            cal.t2_us = require_number(entry, "t2_us", where);
            cal.readout_error = optional_number(entry, "readout_error", where);
            if (!qubits.emplace(id->get<Qubit>(), cal).second) {
                throw ProfileError(where + ": duplicate qubit id " + std::to_string(id->get<Qubit>()));
            }
        }
    }

    std::map<std::pair<std::string, std::vector<Qubit>>, GateCalibration> gates;
    if (auto it = doc.find("gates"); it != doc.end()) {
        if (!it->is_array()) {
            throw ProfileError("'gates' must be an array");
        }
        for (size_t k = 0; k < it->size(); k++) {
            const json &entry = (*it)[k];
            std::string where = "gates[" + std::to_string(k) + "]";
            if (!entry.is_object()) {
                throw ProfileError(where + " must be an object");
            }
            auto name = entry.find("name");
            auto qs = entry.find("qubits");
            if (name == entry.end() || !name->is_string()) {
                throw ProfileError(where + ": 'name' must be a string");
            }
            if (qs == entry.end() || !qs->is_array() || qs->empty()) {
                throw ProfileError(where + ": 'qubits' must be a non-empty array");
            }
            std::vector<Qubit> key;
            for (const json &q : *qs) {
                if (!q.is_number_unsigned()) {
                    throw ProfileError(where + ": qubit indices must be non-negative integers");
                }
                key.push_back(q.get<Qubit>());
            }
            GateCalibration cal;
            cal.error = optional_number(entry, "error", where);
            cal.duration_ns = optional_number(entry, "duration_ns", where);
            if (!cal.error && !cal.duration_ns) {
                throw ProfileError(where + ": needs 'error' or 'duration_ns'");
            }
            if (!gates.emplace(std::make_pair(name->get<std::string>(), key), cal).second) {
                throw ProfileError(where + ": duplicate gate entry");
            }
        }
    }
    return NoiseProfile(d, std::move(qubits), std::move(gates));
}

NoiseProfile load_profile(const std::string &text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ProfileError(std::string("malformed profile document: ") + e.what());
    }
    return NoiseProfile::from_json(doc);
}

NoiseProfile load_profile_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ProfileError("cannot open profile '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_profile(buffer.str());
}

double gate_error_prob(const Circuit &c, const NoiseProfile &p) {
    double log_ok = 0;
    for (const Gate &g : c.gates()) {
        if (!g.is_measurement) {
            log_ok += std::log1p(-p.gate_error(g.name, g.qubits));
        }
    }
    return -std::expm1(log_ok);
}

ErrorEstimate success_probability(const Circuit &c, const NoiseProfile &p) {
    double log_ok = 0;
    double t1 = INF;
    double t2 = INF;
    for (const Gate &g : c.gates()) {
        if (g.is_measurement) {
            continue;
        }
        log_ok += std::log1p(-p.gate_error(g.name, g.qubits));
        for (Qubit q : g.qubits) {
            t1 = std::min(t1, p.t1_us(q));
            t2 = std::min(t2, p.t2_us(q));
        }
    }
    ErrorEstimate e;
    e.tau_ns = schedule_makespan(c, p);
    double tau_us = e.tau_ns * 1e-3;
    e.p_ge = -std::expm1(log_ok);
    // tau/inf = 0, and tau = 0 contributes nothing even when no T is known.
    double decay = tau_us > 0 ? tau_us / t1 + tau_us / t2 : 0.0;
    e.success = std::exp(log_ok - decay);
    e.p_error = -std::expm1(log_ok - decay);
    return e;
}

}  // namespace fragcut
