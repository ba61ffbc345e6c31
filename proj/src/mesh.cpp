#include "chemolab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chemolab/errors.hpp"

namespace chemolab {

Mesh Mesh::cartesian(double lx, double ly, int nx, int ny) {
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw DomainError("cartesian mesh lengths must be positive");
    }
    if (nx < 4 || ny < 4) throw DomainError("cartesian mesh needs at least 4 cells per direction");

    Mesh mesh(Cartesian2D{lx, ly, nx, ny});
    const double hx = lx / nx;
    const double hy = ly / ny;
    const auto cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    mesh.volumes_.assign(cells, hx * hy);
    mesh.total_volume_ = lx * ly;

    auto index = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) mesh.faces_.push_back({index(i, j), index(i + 1, j), hy, hx});
    }
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i < nx; ++i) mesh.faces_.push_back({index(i, j), index(i, j + 1), hx, hy});
    }
    mesh.build_adjacency();
    return mesh;
}

Mesh Mesh::radial(int n_dim, double radius, int shells) {
    if (n_dim < 2) throw DomainError("radial mesh dimension must be >= 2");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("radial mesh radius must be positive");
    if (shells < 8) throw DomainError("radial mesh needs at least 8 shells");

    Mesh mesh(RadialBall{n_dim, radius, shells});
    const double h = radius / shells;
    mesh.volumes_.resize(static_cast<std::size_t>(shells));
    double inner = 0.0;
    for (int i = 0; i < shells; ++i) {
        const double outer_r = (i + 1 == shells) ? radius : (i + 1) * h;
        const double outer = std::pow(outer_r, n_dim);
        mesh.volumes_[static_cast<std::size_t>(i)] = (outer - inner) / n_dim;
        inner = outer;
        if (i + 1 < shells) {
            const auto left = static_cast<std::size_t>(i);
            mesh.faces_.push_back({left, left + 1, std::pow(outer_r, n_dim - 1), h});
        }
    }
    mesh.total_volume_ = std::pow(radius, n_dim) / n_dim;
    mesh.build_adjacency();
    return mesh;
}

void Mesh::build_adjacency() {
    std::vector<std::size_t> degree(size(), 0);
    for (const Face& f : faces_) {
        ++degree[f.left];
        ++degree[f.right];
    }
    offsets_.assign(size() + 1, 0);
    for (std::size_t i = 0; i < size(); ++i) offsets_[i + 1] = offsets_[i] + degree[i];

    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Face& f : faces_) {
        adjacency_[fill[f.left]++] = {f.right, f.area, f.distance};
        adjacency_[fill[f.right]++] = {f.left, f.area, f.distance};
    }
    // Fixed neighbour order keeps per-cell sums reproducible.
    for (std::size_t i = 0; i < size(); ++i) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
                  [](const Neighbor& a, const Neighbor& b) { return a.cell < b.cell; });
    }
}

int Mesh::space_directions() const noexcept {
    if (const auto* ball = std::get_if<RadialBall>(&geometry_)) return ball->n_dim;
    return 2;
}

double Mesh::min_spacing() const noexcept {
    if (const auto* ball = std::get_if<RadialBall>(&geometry_)) return ball->h();
    const auto& rect = std::get<Cartesian2D>(geometry_);
    return std::min(rect.hx(), rect.hy());
}

std::pair<double, double> Mesh::center(std::size_t cell) const noexcept {
    if (const auto* ball = std::get_if<RadialBall>(&geometry_)) {
        return {(static_cast<double>(cell) + 0.5) * ball->h(), 0.0};
    }
    const auto& rect = std::get<Cartesian2D>(geometry_);
    const auto nx = static_cast<std::size_t>(rect.nx);
    return {(static_cast<double>(cell % nx) + 0.5) * rect.hx(),
            (static_cast<double>(cell / nx) + 0.5) * rect.hy()};
}

bool Field::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double Field::min() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (double x : values_) m = std::min(m, x);
    return m;
}

double Field::max() const noexcept {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : values_) m = std::max(m, x);
    return m;
}

double integrate(const Field& f, const Mesh& mesh) {
    double sum = 0.0;
    const auto vol = mesh.volumes();
    for (std::size_t i = 0; i < f.size(); ++i) sum += vol[i] * f[i];
    return sum;
}

void validate_state(const State& state, const Mesh& mesh) {
    if (state.u.size() != mesh.size() || state.v.size() != mesh.size()) {
        throw DomainError("state size does not match mesh");
    }
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        if (!std::isfinite(state.u[i]) || !std::isfinite(state.v[i])) {
            throw NonFinite("non-finite state value in cell " + std::to_string(i));
        }
        if (state.u[i] < 0.0) {
            std::ostringstream msg;
            msg << "u < 0 in cell " << i << " (u = " << state.u[i] << ")";
            throw PositivityViolation(msg.str());
        }
        if (!(state.v[i] > 0.0)) {
            std::ostringstream msg;
            msg << "v <= 0 in cell " << i << " (v = " << state.v[i] << ")";
            throw PositivityViolation(msg.str());
        }
    }
}

}  // namespace chemolab
