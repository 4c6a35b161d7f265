#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mwrank/geometry.hpp"
#include "mwrank/polynomial.hpp"

namespace mw {

enum class Provenance { Auto, User };

// An isolated ADE point of the surface {g = 0} in the local weighted P^3.
struct SurfacePoint {
    std::vector<Q> coords;  // (s, t, u, v), chart coordinate equal to 1
    std::size_t chart = 0;  // index among (s, t, u)
    std::string type;       // "A2", ...
    std::size_t mu = 0;
    std::size_t lifts = 0;  // invariant basis elements kept
};

struct SingularityDossier {
    std::string name;
    CandidatePoint point;
    WeightSystem ring{std::vector<int>{1, 1, 1, 1}, {"s", "t", "u", "v"}};
    Polynomial g{ring};
    long degree = 0;
    // Images of (x, y, z0, z1, z2) in the local ring.
    std::vector<Polynomial> chart;
    bool isolated = false;
    std::optional<long> milnor;  // of the threefold singularity, when isolated
    std::vector<Polynomial> lifts;
    std::vector<SurfacePoint> surface_points;
    Provenance provenance = Provenance::Auto;
    std::vector<std::string> notes;

    long w() const { return ring.total(); }
};

// Affine plane z = q + s e1 + t e2 through the normalized base point q; the
// identity frame uses the unit vectors of the two coordinates other than the
// first nonzero one of q.
struct Frame {
    std::array<Q, 3> e1, e2;
    bool operator==(const Frame&) const = default;
};
Frame identity_frame(const std::vector<Q>& base);

// Affine chart of Y at the fiber point over q in local coordinates (s, t, u, v)
// with unit weights: the base coordinates through the frame, y -> v, and
// x -> x0 + u, with the linear term in u removed when P(q) != 0.
struct LocalChart {
    std::vector<Q> base;
    Frame frame;
    std::vector<Q> fiber;
    std::vector<Polynomial> images;  // of (x, y, z0, z1, z2)
    Polynomial f{WeightSystem::unit({"s", "t", "u", "v"})};
};

LocalChart local_chart(const WeierstrassModel& m, const std::vector<Q>& base);
LocalChart local_chart(const WeierstrassModel& m, const std::vector<Q>& base, const Frame& frame);

// Frames to try at q, identity first. A frame is fixed by the line at
// infinity (z_c, then lines through two other points not passing through q)
// and two axes through q, taken from the coordinate axes, the rational
// tangent lines of the discriminant and the lines joining q to the other
// points. At most kMaxFrames are returned.
inline constexpr std::size_t kMaxFrames = 64;
std::vector<Frame> chart_frames(const WeierstrassModel& m, const std::vector<Q>& base,
                                const std::vector<std::vector<Q>>& others = {});

// Removes terms of f of degree d+1..max_degree that lie in the Jacobian
// ideal of g = f_d by coordinate changes x_i -> x_i + phi_i (deg phi_i >
// w_i), applied to f and to the chart images, both truncated at max_degree.
// Returns the degrees where terms outside the ideal remain.
std::vector<long> normalize_chart(Polynomial& f, std::vector<Polynomial>& images, const Polynomial& g, long max_degree);

// Pullback of the weighted residue volume form along the chart: the 5x5
// determinant with first column w_i * image_i and the derivatives of the
// images after it, scaled to constant term 1 and truncated at max_degree.
Polynomial chart_volume(const std::vector<Polynomial>& images, const std::vector<long>& ambient_weights,
                        long max_degree);

struct LiftResult {
    bool ok = false;
    bool weight_independent_failure = false;
    std::string failure;
    std::vector<Polynomial> lifts;
    std::vector<SurfacePoint> points;
};

// Lifts for R~: for each isolated ADE point of {g = 0} (all of them rational),
// the local Milnor basis homogenized against the chart coordinate. The lifts
// are checked to map onto a basis of the sum of the Milnor algebras.
LiftResult dossier_tilde_lifts(const Polynomial& g);

struct ExtractionResult {
    std::optional<SingularityDossier> dossier;
    std::string failure;  // set when a user dossier is needed
};

// For each frame from chart_frames, searches weight vectors with entries
// <= 12 and degree <= 36, smallest degree first, then lexicographically; g is the lowest graded part of the
// local equation and must be quasismooth or have only rational isolated ADE
// surface points. A non-isolated point with a nonzero target piece also
// needs a frame where the local equation equals g up to degree 3d - w.
// Throws NotSingular when Y is smooth at the point.
ExtractionResult extract_local_model(const WeierstrassModel& m, const CandidatePoint& point,
                                     const std::optional<std::vector<int>>& proposed_weights = std::nullopt,
                                     const std::vector<std::vector<Q>>& other_points = {});

// Fills in isolation, Milnor number and lifts of a dossier whose ring, g,
// degree and chart are set. Throws Dossier on inconsistent data.
void complete_dossier(const WeierstrassModel& m, SingularityDossier& d);

}  // namespace mw
