// Copyright 2026 The bpy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BPY_BPY_HPP
#define BPY_BPY_HPP

#include "bpy/corpus.hpp"
#include "bpy/error.hpp"
#include "bpy/freq.hpp"
#include "bpy/io.hpp"
#include "bpy/legacy.hpp"
#include "bpy/morph/engine.hpp"
#include "bpy/morph/features.hpp"
#include "bpy/morph/rules.hpp"
#include "bpy/script.hpp"
#include "bpy/segment.hpp"
#include "bpy/utf8.hpp"

#endif  // BPY_BPY_HPP
