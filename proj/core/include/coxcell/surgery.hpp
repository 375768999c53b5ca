#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coxcell/curves.hpp"

namespace coxcell {

// Per-face arc counts for a normal curve system: k is the worst count, n how
// many faces realize it.
struct IncidenceReport {
  std::map<int, int> perFace;  // merged face -> #arcs (faces met only)
  int k = 0;
  int n = 0;
};
IncidenceReport incidence_counts(const BoundaryComplex& b, const CurveSystem& cs);

// The faces met by one curve, in visit order.
struct FaceAnnulus {
  std::vector<int> faces;
  int curve = -1;
};

// Candidate annuli plus the overlap/goodness bookkeeping that drives the
// k = 1 phases: o(F) counts neighbours inside the union beyond the two
// consecutive ones, and a face is good when one side of its boundary walk
// stays clear of the union.
struct AnnuliReport {
  std::vector<FaceAnnulus> annuli;
  std::set<int> unionFaces;
  std::map<int, int> overlap;
  std::map<int, bool> good;
  int badCount = 0;
  int overlapCount = 0;  // faces with o(F) > 0
};
AnnuliReport annuli_report(const BoundaryComplex& b, const CurveSystem& cs);

// True iff the faces, in the given cyclic order, tile an annulus: adjacent
// exactly when consecutive, and no vertex lies on all of them.
bool face_annulus_check(const BoundaryComplex& b, const std::vector<int>& faces);

// One rerouted arc: the old arc `arc` of curve `curve` ran between boundary
// crossings p and q; gamma lists its replacement crossings in curve order
// (first and last are the connector feet, the middle ones the collar).
struct RerouteChord {
  int curve = -1, arc = -1;
  int p = -1, q = -1;       // replaced end crossings (cin, cout)
  bool backSide = false;    // collar routed around the complement side
  std::vector<int> gamma;
};

struct ReroutePlan {
  int face = -1;  // expanded face, pre-expansion id
  int k = 0;
  // the two arcs the separating arc delta keeps apart (indices into chords;
  // {-1,-1} when k == 1)
  std::pair<int, int> extremes{-1, -1};
  std::vector<RerouteChord> chords;
};

// Reroutes the arcs of the expanded face over the new layer.  `c` is the
// complex after expand_face, `bPre` the boundary it was expanded from, `e`
// the expansion record.  Mutates the curve system in place and rechecks the
// routing conditions on the new boundary: ring faces keep their arc counts
// and every new face stays below k (phase 1) resp. at most 1 (overlap modes).
// reroute_phase1 requires k >= 2 on the face; reroute_overlap requires k == 1
// and routes the collar through the side allowed by the mode (good: a side
// clear of `unionFaces`; bad: the side with fewer union faces, ties to the
// lower id), then applies shortcut splices greedily.
// Throws CaseDetectionAmbiguous, PlanInfeasible.
ReroutePlan reroute_phase1(const TileComplex& c, const BoundaryComplex& bPre,
                           const ExpansionRecord& e, CurveSystem& cs);
ReroutePlan reroute_overlap(const TileComplex& c, const BoundaryComplex& bPre,
                            const ExpansionRecord& e, CurveSystem& cs, bool goodMode,
                            const std::set<int>& unionFaces);

// Splices a collar's face-visit path: whenever two non-consecutive stops are
// the same face or adjacent faces, the stretch between them is cut out.
// Idempotent at fixpoint; the result is never longer.
std::vector<int> shortcut(const BoundaryComplex& b, const std::vector<int>& faceVisits);

struct SurgeryStep {
  std::string phase;  // "p1" | "p2" | "p3"
  std::string face;   // tag of the expanded face, in the pre-expansion complex
  int k = 0, n = 0, badCount = 0, overlapCount = 0, tiles = 0;
};

// Called after every expansion + reroute with the fresh state; used for
// paranoid recounts from the outside.
using StepHook =
    std::function<void(const TileComplex&, const BoundaryComplex&, const CurveSystem&)>;

struct DriverResult {
  TileComplex cx;       // the expanded complex
  CurveSystem curves;   // the rerouted system on its boundary
  std::vector<FaceAnnulus> annuli;
  std::vector<SurgeryStep> trace;
  int expansions = 0;
};

// Expands and reroutes until every curve is carried by a face annulus:
// while k > 1 flatten the worst face ((k, n) must drop lexicographically),
// then repair bad faces, then shave positive overlaps; every step keeps the
// curves normal, the classes fixed and the boundary locally convex.
// Throws ProgressStalled when a monotonicity claim fails, BudgetExceeded
// after `budget` expansions, CaseDetectionAmbiguous / PlanInfeasible from
// the per-step planner.
DriverResult run_annuli_driver(const TileComplex& c, const CurveSystem& cs,
                               int budget = 500, const StepHook& hook = {});

}  // namespace coxcell
