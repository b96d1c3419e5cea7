#pragma once

// Decision layer. Every verdict is three-valued; a positive or negative
// answer always names the rule that produced it or carries a certificate
// that can be replayed from scratch.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gbs/graph.hpp"
#include "gbs/lingroup.hpp"
#include "gbs/modular.hpp"
#include "gbs/tree.hpp"

namespace gbs {

enum class Tri { Yes, No, Unknown };
const char* to_string(Tri t);

struct AmenabilityVerdict {
  enum class Status { Amenable, NonAmenable, Unknown };
  enum class Reason { SingleVertexNoEdges, AscendingHNN, IndexTwoAmalgam };
  Status status = Status::Unknown;
  std::optional<Reason> reason;
  std::optional<PingPongCertificate> certificate;
  /// Search depth reached when Unknown.
  int depth = 0;
  /// Set when the search stopped on a resource bound.
  std::string note;
};

const char* to_string(AmenabilityVerdict::Status s);
const char* to_string(AmenabilityVerdict::Reason r);

constexpr int kDefaultVerdictDepth = 6;

AmenabilityVerdict decide_amenable(const Gbs& g, int depth = kDefaultVerdictDepth);

/// Amenability of the closure of mu(H_d) in GL_n(R), where H_d is generated
/// by the stable letters.
struct ClosureVerdict {
  enum class Status { Amenable, NonAmenable, Unknown };
  enum class Case { DZero, DOne, NOne, InvariantForm, Triangularizable };
  Status status = Status::Unknown;
  std::optional<Case> rule;
  std::optional<QMatrix> form;
  std::optional<SchottkyCertificate> certificate;
  int depth = 0;
};

const char* to_string(ClosureVerdict::Status s);
const char* to_string(ClosureVerdict::Case c);

ClosureVerdict closure_amenability(const ModularData& md, const Gbs& g, int depth = kDefaultVerdictDepth);

struct HaagerupReport {
  Tri haagerup = Tri::Unknown;
  Tri weakly_amenable = Tri::Unknown;
  /// Cowling-Haagerup constant, present exactly when it equals 1.
  std::optional<int> lambda;
  ClosureVerdict closure;
};

HaagerupReport haagerup_report(const ModularData& md, const Gbs& g, int depth = kDefaultVerdictDepth);
HaagerupReport haagerup_report(const Gbs& g, int depth = kDefaultVerdictDepth);

struct DistortionReport {
  /// Basis (row vectors in dual coordinates) of the largest invariant
  /// subspace of the dual on which mu(H_d) acts distally. When the analysis
  /// is not certified this is only an upper bound.
  std::vector<QVector> distal_dual_part;
  Tri exp_distorted = Tri::Unknown;
  bool certified = false;
  std::string note;
};

/// Words in the generators of mu(H_d) examined when d >= 2.
constexpr int kDistalityWordDepth = 3;

DistortionReport distortion_report(const ModularData& md, const Gbs& g);

struct CompressionReport {
  bool applicable = false;
  /// alpha_p(G), evaluated.
  std::optional<Rat> alpha_p;
  /// alpha_p^#(G), evaluated; when amenability is unresolved both
  /// alternatives are listed (amenable value first).
  std::vector<Rat> alpha_p_sharp;
  std::string alpha_p_symbolic;
  std::string alpha_p_sharp_symbolic;
  std::vector<std::string> assumptions;
};

/// p >= 1.
CompressionReport compression_report(const Gbs& g, const Rat& p, const AmenabilityVerdict& amenable);
CompressionReport compression_report(const Gbs& g, const Rat& p, int depth = kDefaultVerdictDepth);

struct StructureReport {
  bool kernel_free = true;
  Tri free_by_amenable = Tri::Unknown;
  std::string reason;
};

StructureReport structure_report(const ModularData& md, const Gbs& g, const ClosureVerdict& closure);
StructureReport structure_report(const ModularData& md, const Gbs& g, int depth = kDefaultVerdictDepth);

}  // namespace gbs
