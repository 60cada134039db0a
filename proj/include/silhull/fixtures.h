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

#ifndef SILHULL_FIXTURES_H_
#define SILHULL_FIXTURES_H_

#include "silhull/mesh.h"

namespace silhull {

// Procedural test subjects.

// Icosphere with outward winding and exact unit normals.
TriangleMesh make_sphere(const Vec3& center, double radius, int subdivisions);

// Axis-aligned box with 12 triangles, outward winding.
TriangleMesh make_box(const Vec3& min_corner, const Vec3& max_corner);

// Axis-aligned box whose six faces carry distinct flat colors (24 vertices):
// +x red, -x cyan, +y green, -y magenta, +z blue, -z yellow.
TriangleMesh make_colored_box(const Vec3& min_corner, const Vec3& max_corner);

// T-pose skeleton facing +z, 1.7 m from ankles to head, pelvis at
// (0, 0.98, 0). All joints lie in the z = 0 plane.
JointSet tpose_joints();

// Closed body-like surface (capsule limbs, ellipsoid torso, spherical head)
// around tpose_joints(), meshed from a signed distance field.
TriangleMesh make_mannequin(double cell_size = 0.015);

// Joints for a sphere subject: pelvis at the center, the rest on the
// surface.
JointSet sphere_joints(const Vec3& center, double radius);

}  // namespace silhull

#endif  // SILHULL_FIXTURES_H_
