#pragma once

// Cell-centred finite-volume meshes.
//
// Cartesian2D: rectangle [0, Lx] x [0, Ly], cells ordered row-major with x
// fastest (index = j * nx + i).
// RadialBall: n-dimensional ball of radius R split into m equal shells,
// indexed from the centre outward. Volumes and areas drop the sphere-area
// constant: volume_i = (r_{i+1/2}^n - r_{i-1/2}^n) / n, area = r^{n-1}.
//
// Only interior faces are stored; boundary faces carry zero flux.

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace chemolab {

struct Cartesian2D {
    double lx;
    double ly;
    int nx;
    int ny;

    double hx() const noexcept { return lx / nx; }
    double hy() const noexcept { return ly / ny; }
    bool operator==(const Cartesian2D&) const = default;
};

struct RadialBall {
    int n_dim;
    double radius;
    int shells;

    double h() const noexcept { return radius / shells; }
    bool operator==(const RadialBall&) const = default;
};

using Geometry = std::variant<Cartesian2D, RadialBall>;

struct Face {
    std::size_t left;   // lower cell index
    std::size_t right;  // higher cell index
    double area;
    double distance;  // centre-to-centre
};

/// One entry of a cell's adjacency list.
struct Neighbor {
    std::size_t cell;
    double area;
    double distance;
};

class Mesh {
public:
    static Mesh cartesian(double lx, double ly, int nx, int ny);
    static Mesh radial(int n_dim, double radius, int shells);

    const Geometry& geometry() const noexcept { return geometry_; }
    bool is_radial() const noexcept { return std::holds_alternative<RadialBall>(geometry_); }

    std::size_t size() const noexcept { return volumes_.size(); }

    /// 2 for the rectangle, n for the ball.
    int space_directions() const noexcept;
    double min_spacing() const noexcept;

    std::span<const double> volumes() const noexcept { return volumes_; }
    double volume(std::size_t cell) const noexcept { return volumes_[cell]; }
    double total_volume() const noexcept { return total_volume_; }

    std::span<const Face> faces() const noexcept { return faces_; }
    std::span<const Neighbor> neighbors(std::size_t cell) const noexcept {
        return {adjacency_.data() + offsets_[cell], adjacency_.data() + offsets_[cell + 1]};
    }

    /// Cell centre: (x, y) for the rectangle, (r, 0) for the ball.
    std::pair<double, double> center(std::size_t cell) const noexcept;

private:
    explicit Mesh(Geometry g) : geometry_(g) {}
    void build_adjacency();

    Geometry geometry_;
    std::vector<double> volumes_;
    double total_volume_ = 0.0;
    std::vector<Face> faces_;
    std::vector<std::size_t> offsets_;
    std::vector<Neighbor> adjacency_;
};

/// Cell values in the mesh's cell ordering.
class Field {
public:
    Field() = default;
    explicit Field(std::size_t n, double value = 0.0) : values_(n, value) {}
    explicit Field(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    bool all_finite() const noexcept;
    double min() const noexcept;
    double max() const noexcept;

    bool operator==(const Field&) const = default;

private:
    std::vector<double> values_;
};

/// Σ vol_i f_i
double integrate(const Field& f, const Mesh& mesh);

struct State {
    Field u;  // cell density, >= 0
    Field v;  // chemical, > 0
    double t = 0.0;

    bool operator==(const State&) const = default;
};

/// Throws PositivityViolation unless u >= 0 and v > 0 everywhere, or
/// DomainError if sizes do not match the mesh.
void validate_state(const State& state, const Mesh& mesh);

}  // namespace chemolab
