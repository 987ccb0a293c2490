#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "warped/model.hpp"
#include "warped/shooting.hpp"

namespace warped {

// The diameter realization (existence of the far point) is not
// computable from a curvature profile; it is recorded as a declaration.
struct Assumption1 {
    double l = 0.0;
    std::string source = "user-declared";
};

struct Assumption2 {
    SymmetryReport symmetry;
    AdmissibilityReport admissibility;
    bool satisfied() const
    {
        return symmetry.symmetric && admissibility.closes && admissibility.positive_interior;
    }
};

// The first nonzero closed eigenvalue of the physical manifold is a
// user claim; only the threshold Lambda+ is computed here.
struct Assumption3 {
    double lambda_plus = 0.0;
    std::optional<double> user_claimed_lambda1;
    std::optional<bool> satisfied;
};

struct HypothesisReport {
    Assumption1 assumption1;
    Assumption2 assumption2;
    Assumption3 assumption3;
    bool conclusion_applicable = false;
    int n = 2;
    double l = 0.0;
    std::vector<std::array<double, 2>> f_samples; // model digest
    double tolerance = 0.0;
};

struct ConsistencyReport {
    double lambda_plus = 0.0;            // lambda_1(ball l/2, m=0), cross-checked
    double lambda1_closed = 0.0;         // min over sectors m=0 (nonzero), m=1
    double closed_m0_first_nonzero = 0.0;
    double closed_m1_first = 0.0;
    std::vector<double> closed_m0_spectrum;
    double lambda1_ball_m1 = 0.0;
    bool thm22_holds = false;          // lambda1_closed <= lambda_plus (+tol)
    bool antisymmetric_match = false;  // lambda_plus appears in the closed m=0 spectrum
    bool ground_state_radial = false;  // lambda_1(ball, m=1) > lambda_1(ball, m=0)
    double cheng_equality_residual = 0.0; // |shooting - oracle| on the model's own ball
    double tolerance = 0.0;
};

struct ClosedFormCase {
    int n = 2;
    double K = 1.0;
    double l = 0.0; // pi / sqrt(K)
    std::string f_closed_form = "sin(sqrt(K)*t)/sqrt(K)";
    double lambda_plus_closed_form = 0.0; // n K
};

struct ExplorationRecord {
    int n = 2;
    double k_min = 0.0;
    double n_k_min = 0.0;
    double lambda1_closed = 0.0;
};

// Finds the closing length, integrates the warp, and verifies
// admissibility and symmetry. Throws SolveError when the profile does
// not close, is asymmetric, or f is not positive on the interior.
ModelSpace build_model(const CurvatureProfile& profile, int n, double t_max,
                       double tolerance = 1e-8);

// lambda_1(ball radius l/2, m=0) by shooting, cross-checked against the
// finite-difference oracle (Richardson over {oracle_N/2, oracle_N}).
// Throws SolveError when the two methods disagree beyond
// max(1e-6, 1e-4 * lambda).
EigenResult compute_lambda_plus(const ModelSpace& model, double tolerance = 1e-8,
                                int oracle_N = 2048);

HypothesisReport check_hypotheses(const ModelSpace& model,
                                  std::optional<double> claimed_lambda1 = std::nullopt,
                                  double tolerance = 1e-4);

ConsistencyReport verify_model_consistency(const ModelSpace& model, double tolerance = 1e-4);

// Analytic package for constant curvature K > 0: f = sin(sqrt(K) t)/sqrt(K),
// l = pi/sqrt(K), Lambda+ = n K.
ClosedFormCase constant_curvature_case(int n, double K);

// Emits (k_min, n*k_min, Lambda_1(M*)) for inspection; draws no
// conclusion.
ExplorationRecord explore_question(const ModelSpace& model);

} // namespace warped
