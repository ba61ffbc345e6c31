#include "chemolab/initial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "chemolab/errors.hpp"

namespace chemolab {

const char* to_string(InitialKind kind) {
    switch (kind) {
        case InitialKind::constant_cosine: return "constant_cosine";
        case InitialKind::gaussian: return "gaussian";
    }
    return "?";
}

InitialKind parse_initial_kind(const std::string& name) {
    if (name == "constant_cosine") return InitialKind::constant_cosine;
    if (name == "gaussian") return InitialKind::gaussian;
    throw DomainError("unknown initial kind '" + name + "' (expected constant_cosine | gaussian)");
}

void InitialCondition::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(amplitude) || !finite(u_base) || !finite(v0_base) || !finite(v_amplitude)) {
        throw DomainError("initial data parameters must be finite");
    }
    if (!(width > 0.0) || !finite(width)) throw DomainError("initial width must be > 0");
    if (!(v0_min > 0.0) || !finite(v0_min)) throw DomainError("v0_min must be > 0");
}

State make_initial_state(const InitialCondition& ic, const Mesh& mesh) {
    ic.validate();
    using std::numbers::pi;
    auto shape = [&](std::size_t cell) {
        const auto [x, y] = mesh.center(cell);
        if (const auto* ball = std::get_if<RadialBall>(&mesh.geometry())) {
            if (ic.kind == InitialKind::constant_cosine) return std::cos(pi * x / ball->radius);
            return std::exp(-x * x / (2.0 * ic.width * ic.width));
        }
        const auto& rect = std::get<Cartesian2D>(mesh.geometry());
        if (ic.kind == InitialKind::constant_cosine) {
            return std::cos(pi * x / rect.lx) * std::cos(pi * y / rect.ly);
        }
        const double dx = x - 0.5 * rect.lx;
        const double dy = y - 0.5 * rect.ly;
        return std::exp(-(dx * dx + dy * dy) / (2.0 * ic.width * ic.width));
    };

    State state{Field(mesh.size()), Field(mesh.size()), 0.0};
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double s = shape(i);
        state.u[i] = ic.u_base + ic.amplitude * s;
        state.v[i] = std::max(ic.v0_min, ic.v0_base + ic.v_amplitude * s);
        if (state.u[i] < 0.0) {
            std::ostringstream msg;
            msg << "initial u is negative in cell " << i << "; raise u_base or lower amplitude";
            throw DomainError(msg.str());
        }
    }
    return state;
}

}  // namespace chemolab
