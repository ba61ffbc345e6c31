#pragma once

#include <string>

#include "chemolab/mesh.hpp"

namespace chemolab {

enum class InitialKind { constant_cosine, gaussian };

const char* to_string(InitialKind kind);
InitialKind parse_initial_kind(const std::string& name);

/// Initial data built from one shape function s(x):
///   constant_cosine: s = cos(πx/Lx) cos(πy/Ly)  (ball: cos(πr/R))
///   gaussian:        s = exp(-|x - c|² / (2 width²)), c the domain centre
///                    (ball: the origin)
/// u0 = u_base + amplitude s,  v0 = max(v0_min, v0_base + v_amplitude s).
struct InitialCondition {
    InitialKind kind = InitialKind::gaussian;
    double amplitude = 1.0;
    double width = 0.2;
    double u_base = 0.0;
    double v0_base = 1.0;
    double v_amplitude = 0.0;
    double v0_min = 0.1;

    void validate() const;
    bool operator==(const InitialCondition&) const = default;
};

/// Throws DomainError if the resulting u0 has a negative entry.
State make_initial_state(const InitialCondition& ic, const Mesh& mesh);

}  // namespace chemolab
