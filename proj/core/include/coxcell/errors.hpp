#pragma once

#include <stdexcept>
#include <string>

namespace coxcell {

enum class Err {
  // polyhedron
  NonTrivalentVertex,
  FaceTooSmall,
  MultiEdge,
  EulerViolation,
  Disconnected,
  PrismaticCircuit,
  // words
  UnknownFace,
  MixedPolyhedra,
  // rose
  FiniteOrderGenerator,
  PrefixCollision,
  PortCollision,
  ClosureBudgetExceeded,
  RoutingFailed,
  CurveNotOnBoundary,
  // complex
  InvalidGluing,
  InconsistentEuler,
  DiskCheckFailed,
  CurveNotNormal,
  // surgery
  CaseDetectionAmbiguous,
  PlanInfeasible,
  PreconditionK,
  ProgressStalled,
  BudgetExceeded,
  // orbifold
  NotTwoComponents,
  NotPlanar,
  CircleCountMismatch,
  RelatorFailure,
  NonNegativeEuler,
  HomomorphismSearchFailed,
  TorsionDetected,
  WitnessFailure,
  // verification
  OracleMismatch,
};

const char* err_name(Err e);

// All detectable failures carry a code so callers can branch without string
// matching; what() keeps the human-readable detail.
struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& detail)
      : std::runtime_error(std::string(err_name(c)) + ": " + detail), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& detail) {
  throw Error(c, detail);
}

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NonTrivalentVertex: return "NonTrivalentVertex";
    case Err::FaceTooSmall: return "FaceTooSmall";
    case Err::MultiEdge: return "MultiEdge";
    case Err::EulerViolation: return "EulerViolation";
    case Err::Disconnected: return "Disconnected";
    case Err::PrismaticCircuit: return "PrismaticCircuit";
    case Err::UnknownFace: return "UnknownFace";
    case Err::MixedPolyhedra: return "MixedPolyhedra";
    case Err::FiniteOrderGenerator: return "FiniteOrderGenerator";
    case Err::PrefixCollision: return "PrefixCollision";
    case Err::PortCollision: return "PortCollision";
    case Err::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case Err::RoutingFailed: return "RoutingFailed";
    case Err::CurveNotOnBoundary: return "CurveNotOnBoundary";
    case Err::InvalidGluing: return "InvalidGluing";
    case Err::InconsistentEuler: return "InconsistentEuler";
    case Err::DiskCheckFailed: return "DiskCheckFailed";
    case Err::CurveNotNormal: return "CurveNotNormal";
    case Err::CaseDetectionAmbiguous: return "CaseDetectionAmbiguous";
    case Err::PlanInfeasible: return "PlanInfeasible";
    case Err::PreconditionK: return "PreconditionK";
    case Err::ProgressStalled: return "ProgressStalled";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::NotTwoComponents: return "NotTwoComponents";
    case Err::NotPlanar: return "NotPlanar";
    case Err::CircleCountMismatch: return "CircleCountMismatch";
    case Err::RelatorFailure: return "RelatorFailure";
    case Err::NonNegativeEuler: return "NonNegativeEuler";
    case Err::HomomorphismSearchFailed: return "HomomorphismSearchFailed";
    case Err::TorsionDetected: return "TorsionDetected";
    case Err::WitnessFailure: return "WitnessFailure";
    case Err::OracleMismatch: return "OracleMismatch";
  }
  return "UnknownError";
}

}  // namespace coxcell
