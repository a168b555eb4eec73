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


#ifndef _QCDS_IO_UTIL_H
#define _QCDS_IO_UTIL_H

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qcds {

inline std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#ifdef QCDS_FIXTURE_DIR
inline std::string fixture_text(const std::string &name) {
    return read_file(std::string(QCDS_FIXTURE_DIR) + "/" + name);
}
#endif

}  // namespace qcds

#endif
