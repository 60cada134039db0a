// Copyright 2026 The silhull Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SILHULL_MESH_IO_H_
#define SILHULL_MESH_IO_H_

#include <filesystem>

#include "silhull/mesh.h"

namespace silhull {

// Reads .obj (v/vn/f, polygons fan-triangulated) or binary little-endian
// .ply. Errors carry the file name and line/record number. The result is
// validated; nothing is repaired.
TriangleMesh load_mesh(const std::filesystem::path& path);

// Format chosen by extension. OBJ positions are written with 17 significant
// digits so doubles survive a round trip bit-exactly. OBJ drops colors;
// PLY keeps them as uchar.
void save_mesh(const TriangleMesh& mesh, const std::filesystem::path& path);

// {"joints": [{"name": "...", "position": [x, y, z]}, ...]} with exactly the
// 13 canonical names in any order.
JointSet load_joints(const std::filesystem::path& path);
void save_joints(const JointSet& joints, const std::filesystem::path& path);

}  // namespace silhull

#endif  // SILHULL_MESH_IO_H_
