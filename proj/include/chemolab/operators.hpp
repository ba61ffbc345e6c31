#pragma once

// Conservative two-point flux operators with homogeneous Neumann boundaries.
//
// The kernels in namespace chemolab gather per cell over the mesh adjacency
// list and are OpenMP-parallel; each output cell is written by exactly one
// thread, so results do not depend on the thread count. The serial
// face-scatter versions in chemolab::reference are kept as test oracles.

#include "chemolab/mesh.hpp"

namespace chemolab {

/// Face velocity χ (v_R - v_L) / (h v_face), v_face the arithmetic mean.
inline double face_velocity(double v_left, double v_right, double chi, double distance) noexcept {
    return chi * (v_right - v_left) / (distance * 0.5 * (v_left + v_right));
}

/// (1/vol) Σ_faces area (f_nb - f_self) / h
Field laplacian_neumann(const Field& f, const Mesh& mesh);

/// (1/vol) Σ_faces outward upwind flux of χ u ∇v / v.
/// Throws PositivityViolation if any v <= 0.
Field chemotactic_divergence(const Field& u, const Field& v, double chi, const Mesh& mesh);

/// max over cells of (1/vol) Σ_faces area max(w_out, 0); zero when ∇v ≡ 0.
double max_outflow_rate(const Field& v, double chi, const Mesh& mesh);

namespace reference {

Field laplacian_neumann(const Field& f, const Mesh& mesh);
Field chemotactic_divergence(const Field& u, const Field& v, double chi, const Mesh& mesh);

}  // namespace reference

/// Throws PositivityViolation unless every entry is > 0.
void require_positive_field(const Field& v, const char* name);

}  // namespace chemolab
