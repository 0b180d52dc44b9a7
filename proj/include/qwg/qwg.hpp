// Copyright 2026 The qwg Authors
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

#ifndef QWG_QWG_HPP_
#define QWG_QWG_HPP_

#include "qwg/circuit.hpp"
#include "qwg/detection.hpp"
#include "qwg/fock.hpp"
#include "qwg/gates.hpp"
#include "qwg/interference.hpp"
#include "qwg/netlist_io.hpp"
#include "qwg/noon.hpp"
#include "qwg/rng.hpp"

#endif  // QWG_QWG_HPP_
