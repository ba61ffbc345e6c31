#include "chemolab/operators.hpp"

namespace chemolab::reference {

Field laplacian_neumann(const Field& f, const Mesh& mesh) {
    Field flux_sum(mesh.size());
    for (const Face& face : mesh.faces()) {
        const double flux = face.area * (f[face.right] - f[face.left]) / face.distance;
        flux_sum[face.left] += flux;
        flux_sum[face.right] -= flux;
    }
    for (std::size_t i = 0; i < mesh.size(); ++i) flux_sum[i] /= mesh.volume(i);
    return flux_sum;
}

Field chemotactic_divergence(const Field& u, const Field& v, double chi, const Mesh& mesh) {
    require_positive_field(v, "v");
    Field flux_sum(mesh.size());
    for (const Face& face : mesh.faces()) {
        // positive flux moves mass from left to right
        const double w = face_velocity(v[face.left], v[face.right], chi, face.distance);
        const double donor = w > 0.0 ? u[face.left] : u[face.right];
        const double flux = face.area * w * donor;
        flux_sum[face.left] += flux;
        flux_sum[face.right] -= flux;
    }
    for (std::size_t i = 0; i < mesh.size(); ++i) flux_sum[i] /= mesh.volume(i);
    return flux_sum;
}

}  // namespace chemolab::reference
