#pragma once

#include <string>

#include "json.hpp"
#include "proxitop/axioms.hpp"
#include "proxitop/cycles.hpp"
#include "proxitop/homotopy.hpp"
#include "proxitop/jordan.hpp"
#include "proxitop/maps.hpp"
#include "proxitop/nerves.hpp"
#include "proxitop/persist.hpp"

namespace proxitop::report {

// All reports are built as order-preserving JSON documents. Structured
// output is the document itself; text output is a generic rendering of the
// same document, so the two never drift apart. Key order is fixed by
// construction, which is what makes identical runs byte-identical.
using Doc = nlohmann::ordered_json;

Doc axiom_doc(const AxiomReport& r);
Doc continuity_doc(const ContinuityWitness& w);
Doc homotopy_doc(const HomotopyCheckReport& r);
Doc cycle_validation_doc(const CycleValidationReport& r);
Doc betti_doc(const BettiPair& b);
Doc presentation_doc(const PresentationSummary& p);
Doc complex_doc(const SimplicialComplex& k);
Doc homology_doc(const HomologyReport& h);
Doc good_cover_doc(const GoodCoverReport& g);
Doc nerve_comparison_doc(const NerveComparisonReport& n);
Doc jordan_doc(const JordanReport& j);
Doc agreement_doc(const AgreementReport& a);
Doc descriptor_doc(const ShapeDescriptor& d);
Doc match_doc(const MatchReport& m);
// fps turns interval index gaps into per-interval durations in seconds.
Doc track_doc(const TrackReport& t, double fps);

// The document serialized with a fixed indentation; parsing this text and
// re-rendering it reproduces the bytes.
std::string render_structured(const Doc& doc);

// Human-readable key/value rendering of the same document.
std::string render_text(const Doc& doc);

}  // namespace proxitop::report
