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

#include "fragcut/distribution.hpp"

#include "fragcut/error.hpp"

namespace fragcut {

using nlohmann::json;

double Distribution::operator()(const std::string &bitstring) const {
    if (bitstring.size() != width) {
        throw Error("bitstring '" + bitstring + "' does not match width " + std::to_string(width));
    }
    return probs[bitstring_to_outcome(bitstring)];
}

double Distribution::total() const {
    double s = 0;
    for (double p : probs) {
        s += p;
    }
    return s;
}

std::string outcome_to_bitstring(uint64_t outcome, size_t width) {
    std::string s(width, '0');
    for (size_t q = 0; q < width; q++) {
        if ((outcome >> q) & 1) {
            s[q] = '1';
        }
    }
    return s;
}

uint64_t bitstring_to_outcome(const std::string &bits) {
    uint64_t out = 0;
    for (size_t q = 0; q < bits.size(); q++) {
        if (bits[q] == '1') {
            out |= uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw Error("bitstring '" + bits + "' contains a character other than 0/1");
        }
    }
    return out;
}

json distribution_to_json(const Distribution &d) {
    json probs = json::object();
    for (uint64_t x = 0; x < d.probs.size(); x++) {
        if (d.probs[x] != 0) {
            probs[outcome_to_bitstring(x, d.width)] = d.probs[x];
        }
    }
    json doc{{"width", d.width}, {"probs", probs}};
    if (d.quasi) {
        doc["quasi"] = true;
    }
    if (d.shots) {
        doc["shots"] = *d.shots;
    }
    if (d.negative_mass_clipped) {
        doc["negative_mass_clipped"] = *d.negative_mass_clipped;
    }
    return doc;
}

Distribution distribution_from_json(const json &doc) {
    try {
        Distribution d(doc.at("width").get<size_t>());
        for (const auto &[bits, value] : doc.at("probs").items()) {
            if (bits.size() != d.width) {
                throw Error("distribution entry '" + bits + "' does not match width");
            }
            d.probs[bitstring_to_outcome(bits)] = value.get<double>();
        }
        d.quasi = doc.value("quasi", false);
        if (doc.contains("shots")) {
            d.shots = doc.at("shots").get<uint64_t>();
        }
        if (doc.contains("negative_mass_clipped")) {
            d.negative_mass_clipped = doc.at("negative_mass_clipped").get<double>();
        }
        return d;
    } catch (const json::exception &e) {
        throw Error(std::string("malformed distribution document: ") + e.what());
    }
}

}  // namespace fragcut
