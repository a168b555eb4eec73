// Copyright 2026 The qcds Authors
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


#include "qcds/physical/dem.h"

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcds {

namespace {

struct Sens {
    std::vector<uint32_t> dets;
    uint64_t obs = 0;

    void operator^=(const Sens &o) {
        if (!o.dets.empty()) {
            std::vector<uint32_t> out;
            out.reserve(dets.size() + o.dets.size());
            std::set_symmetric_difference(dets.begin(), dets.end(), o.dets.begin(), o.dets.end(),
                                          std::back_inserter(out));
            dets.swap(out);
        }
        obs ^= o.obs;
    }
    bool empty() const {
        return dets.empty() && obs == 0;
    }
    void clear() {
        dets.clear();
        obs = 0;
    }
    auto key() const {
        return std::make_pair(dets, obs);
    }
};

Sens combined(const Sens &a, const Sens &b) {
    Sens out = a;
    out ^= b;
    return out;
}

class Extractor {
   public:
    explicit Extractor(const PhysicalCircuit &pc) : pc_(pc), xs_(pc.num_qubits), zs_(pc.num_qubits) {
        meas_.resize(pc.num_measurements());
        uint32_t det = 0;
        for (const auto &in : pc.instructions) {
            if (in.gate == Gate::DETECTOR) {
                for (auto m : in.targets) {
                    meas_.at(m).dets.push_back(det);
                }
                det++;
            } else if (in.gate == Gate::OBSERVABLE) {
                auto k = static_cast<uint32_t>(in.arg);
                if (k >= 64) {
                    throw std::invalid_argument("at most 64 observables are supported");
                }
                for (auto m : in.targets) {
                    meas_.at(m).obs ^= uint64_t{1} << k;
                }
            }
        }
        for (auto &s : meas_) {
            // A detector may list a record twice; pairs cancel.
            std::sort(s.dets.begin(), s.dets.end());
            std::vector<uint32_t> odd;
            for (size_t k = 0; k < s.dets.size();) {
                size_t j = k;
                while (j < s.dets.size() && s.dets[j] == s.dets[k]) {
                    j++;
                }
                if ((j - k) % 2) {
                    odd.push_back(s.dets[k]);
                }
                k = j;
            }
            s.dets.swap(odd);
        }
    }

    DetectorErrorModel run() {
        size_t m = meas_.size();
        for (auto it = pc_.instructions.rbegin(); it != pc_.instructions.rend(); ++it) {
            const auto &in = *it;
            const auto &t = in.targets;
            switch (in.gate) {
                case Gate::H:
                    for (auto q : t) std::swap(xs_[q], zs_[q]);
                    break;
                case Gate::S:
                    for (auto q : t) xs_[q] ^= zs_[q];
                    break;
                case Gate::SQRT_X:
                    for (auto q : t) zs_[q] ^= xs_[q];
                    break;
                case Gate::CX:
                    for (size_t k = t.size(); k >= 2; k -= 2) {
                        uint32_t c = t[k - 2], tg = t[k - 1];
                        xs_[c] ^= xs_[tg];
                        zs_[tg] ^= zs_[c];
                    }
                    break;
                case Gate::R:
                case Gate::RX:
                    for (auto q : t) {
                        xs_[q].clear();
                        zs_[q].clear();
                    }
                    break;
                case Gate::M:
                case Gate::MX:
                    for (size_t k = t.size(); k-- > 0;) {
                        const Sens &s = meas_[--m];
                        add(in.arg, s);
                        uint32_t q = t[k];
                        if (in.gate == Gate::M) {
                            zs_[q].clear();
                            xs_[q] ^= s;
                        } else {
                            xs_[q].clear();
                            zs_[q] ^= s;
                        }
                    }
                    break;
                case Gate::MPP: {
                    const Sens &s = meas_[--m];
                    add(in.arg, s);
                    for (auto v : t) {
                        uint32_t q = v & QUBIT_MASK;
                        if (v & PAULI_Z_BIT) {
                            xs_[q] ^= s;
                        }
                        if (v & PAULI_X_BIT) {
                            zs_[q] ^= s;
                        }
                    }
                    break;
                }
                case Gate::DEPOLARIZE1:
                    for (auto q : t) {
                        add(in.arg / 3, xs_[q]);
                        add(in.arg / 3, zs_[q]);
                        add(in.arg / 3, combined(xs_[q], zs_[q]));
                    }
                    break;
                case Gate::DEPOLARIZE2:
                    for (size_t k = 0; k + 1 < t.size(); k += 2) {
                        uint32_t a = t[k], b = t[k + 1];
                        std::array<Sens, 4> pa{Sens{}, xs_[a], zs_[a], combined(xs_[a], zs_[a])};
                        std::array<Sens, 4> pb{Sens{}, xs_[b], zs_[b], combined(xs_[b], zs_[b])};
                        for (size_t u = 0; u < 4; u++) {
                            for (size_t v = 0; v < 4; v++) {
                                if (u || v) {
                                    add(in.arg / 15, combined(pa[u], pb[v]));
                                }
                            }
                        }
                    }
                    break;
                case Gate::X_ERROR:
                    for (auto q : t) add(in.arg, xs_[q]);
                    break;
                case Gate::Z_ERROR:
                    for (auto q : t) add(in.arg, zs_[q]);
                    break;
                case Gate::TICK:
                case Gate::ROUND:
                case Gate::DETECTOR:
                case Gate::OBSERVABLE:
                    break;
            }
        }
        DetectorErrorModel dem;
        dem.num_detectors = static_cast<uint32_t>(pc_.detectors.size());
        dem.num_observables = pc_.num_observables;
        for (auto &[key, p] : merged_) {
            dem.mechanisms.push_back({p, key.first, key.second});
        }
        return dem;
    }

   private:
    const PhysicalCircuit &pc_;
    std::vector<Sens> xs_, zs_, meas_;
    std::map<std::pair<std::vector<uint32_t>, uint64_t>, double> merged_;

    void add(double p, const Sens &s) {
        if (p <= 0 || s.empty()) {
            return;
        }
        auto [it, fresh] = merged_.try_emplace(s.key(), p);
        if (!fresh) {
            it->second = combine_flip(it->second, p);
        }
    }
};

}  // namespace

DetectorErrorModel extract_dem(const PhysicalCircuit &pc) {
    return Extractor(pc).run();
}

std::string DetectorErrorModel::str() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto &e : mechanisms) {
        out << "error(" << e.p << ")";
        for (auto d : e.detectors) {
            out << " D" << d;
        }
        for (uint32_t k = 0; k < 64; k++) {
            if (e.observables >> k & 1) {
                out << " L" << k;
            }
        }
        out << "\n";
    }
    return out.str();
}

std::vector<double> detector_fire_probabilities(const DetectorErrorModel &dem) {
    // Track (1 - 2 P(odd)) multiplicatively.
    std::vector<double> bias(dem.num_detectors, 1.0);
    for (const auto &e : dem.mechanisms) {
        for (auto d : e.detectors) {
            bias.at(d) *= 1 - 2 * e.p;
        }
    }
    for (auto &b : bias) {
        b = (1 - b) / 2;
    }
    return bias;
}

}  // namespace qcds
