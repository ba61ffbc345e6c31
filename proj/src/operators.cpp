#include "chemolab/operators.hpp"

#include <algorithm>
#include <sstream>

#include "chemolab/errors.hpp"

namespace chemolab {

void require_positive_field(const Field& v, const char* name) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) {
            std::ostringstream msg;
            msg << name << " <= 0 in cell " << i << " (" << name << " = " << v[i] << ")";
            throw PositivityViolation(msg.str());
        }
    }
}

Field laplacian_neumann(const Field& f, const Mesh& mesh) {
    const auto cells = static_cast<long>(mesh.size());
    Field out(mesh.size());
    const double* in = f.data();
    double* res = out.data();

#pragma omp parallel for schedule(static)
    for (long c = 0; c < cells; ++c) {
        const auto i = static_cast<std::size_t>(c);
        double acc = 0.0;
        for (const Neighbor& nb : mesh.neighbors(i)) acc += nb.area * (in[nb.cell] - in[i]) / nb.distance;
        res[i] = acc / mesh.volume(i);
    }
    return out;
}

Field chemotactic_divergence(const Field& u, const Field& v, double chi, const Mesh& mesh) {
    require_positive_field(v, "v");
    const auto cells = static_cast<long>(mesh.size());
    Field out(mesh.size());
    const double* uu = u.data();
    const double* vv = v.data();
    double* res = out.data();

#pragma omp parallel for schedule(static)
    for (long c = 0; c < cells; ++c) {
        const auto i = static_cast<std::size_t>(c);
        double acc = 0.0;
        for (const Neighbor& nb : mesh.neighbors(i)) {
            const double w = face_velocity(vv[i], vv[nb.cell], chi, nb.distance);
            acc += nb.area * w * (w > 0.0 ? uu[i] : uu[nb.cell]);
        }
        res[i] = acc / mesh.volume(i);
    }
    return out;
}

double max_outflow_rate(const Field& v, double chi, const Mesh& mesh) {
    const auto cells = static_cast<long>(mesh.size());
    const double* vv = v.data();
    double worst = 0.0;

#pragma omp parallel for schedule(static) reduction(max : worst)
    for (long c = 0; c < cells; ++c) {
        const auto i = static_cast<std::size_t>(c);
        double out = 0.0;
        for (const Neighbor& nb : mesh.neighbors(i)) {
            const double w = face_velocity(vv[i], vv[nb.cell], chi, nb.distance);
            if (w > 0.0) out += nb.area * w;
        }
        worst = std::max(worst, out / mesh.volume(i));
    }
    return worst;
}

}  // namespace chemolab
