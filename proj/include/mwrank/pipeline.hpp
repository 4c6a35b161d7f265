#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwrank/geometry.hpp"
#include "mwrank/graded.hpp"
#include "mwrank/local_model.hpp"

namespace mw {

enum class CandidateMode { Auto, Declared };

// A dossier block from the manifest. With only a point (and optionally
// weights) the local model is extracted automatically.
struct DossierInput {
    std::string name;
    std::vector<Q> point;
    std::optional<std::vector<int>> weights;
    std::optional<SingularityDossier> full;
};

struct Analysis {
    WeierstrassModel model;
    CandidateMode mode = CandidateMode::Auto;
    std::optional<DiscriminantData> disc;  // absent in declared mode
    CandidateSet candidates;
    std::vector<SingularityDossier> dossiers;
    std::vector<std::string> unresolved;
    std::vector<std::string> notes;
};

// Finds candidate points (or takes them from the inputs in declared mode),
// attaches user dossiers by point and extracts the rest. Points whose local
// model cannot be handled end up in `unresolved`.
Analysis analyze(const WeierstrassModel& m, const std::vector<DossierInput>& inputs, CandidateMode mode);

struct RestrictionTarget {
    std::string dossier;
    long degree = 0;  // k d_p - w_p
    std::vector<Monomial> representatives;
};

struct RestrictionMatrix {
    int k = 1;
    long source_degree = 0;  // k d - w
    std::size_t source_dim = 0;
    std::vector<RestrictionTarget> targets;
    std::vector<SparseVec> rows;  // one per source monomial, columns stacked over targets

    std::size_t columns() const;
    std::size_t rank() const;
    std::size_t cokernel() const { return columns() - rank(); }
};

// Pulls back each monomial of C[x,y,z0,z1,z2]_{kd-w} through every dossier
// chart, keeps the graded part of degree k d_p - w_p and reduces it in R~.
// The result does not depend on `threads`.
RestrictionMatrix restriction_matrix(const WeierstrassModel& m, const std::vector<SingularityDossier>& dossiers, int k,
                                     unsigned threads = 1);

enum class Verdict { Exact, UpperBound, Conditional };
const char* verdict_name(Verdict v);

struct HodgeSummary {
    long h31 = 0;
    long h22_prim = 0;
    std::vector<std::optional<long>> betti;  // b0..b6; b3 absent without Milnor data
    long euler_T = 0;                        // quasismooth reference hypersurface
    std::optional<long> mu_total;
    std::optional<long> euler_Y;
    std::vector<std::string> notes;
};

struct RankReport {
    std::size_t r0 = 0, r1 = 0;
    Verdict verdict = Verdict::Exact;
    std::vector<std::string> unresolved;
    std::vector<std::string> provenance;
    std::optional<HodgeSummary> hodge;

    std::string statement() const;  // "rank MW = 2 (exact: r0 = 0, r1 = 2)"
};

RankReport compute_rank(const Analysis& a, unsigned threads = 1);

HodgeSummary hodge_summary(const WeierstrassModel& m, const std::vector<SingularityDossier>& dossiers,
                           const RankReport& report);

// Hodge numbers of the smooth model W of the Hirzebruch-type threefold with m
// base points (0 <= m <= 8) and Mordell-Weil rank r.
struct HirzebruchTable {
    int m = 0, r = 0;
    long h00 = 1, h10 = 0, h20 = 0, h30 = 1, h11 = 0, h21 = 0;
    long euler = 0;
};
HirzebruchTable hirzebruch_invariants(int m, int r);

// m k(k+1)/2 minus the rank of the order-(k-1) Taylor conditions at the
// points on plane curves of degree d. Points must be distinct.
long linear_system_defect(int d, int k, const std::vector<std::vector<Q>>& points);

}  // namespace mw
