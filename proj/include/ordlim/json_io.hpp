#pragma once

// JSON forms of words, sign results, reports, traces and witnesses. Field
// order is fixed; nothing here depends on time or thread scheduling.

#include "json.hpp"
#include "ordlim/convexity.hpp"
#include "ordlim/cone.hpp"
#include "ordlim/presentations.hpp"
#include "ordlim/probes.hpp"

namespace ordlim::io {

using Json = nlohmann::ordered_json;

Json to_json(const Word& w);
/// A chain sign result for w.
Json to_json(const Word& w, const cone::SignResult& r);
Json to_json(const Word& w, const probes::Signed& s);
Json to_json(const probes::ProbeReport& r);
Json to_json(const convexity::DeductionTrace& t);
Json to_json(const convexity::Deduction& d, const std::vector<Word>& seed, const std::vector<Word>& targets);
Json to_json(const convexity::ConvexApprox& a);
Json to_json(const probes::WitnessResult& w);
Json to_json(const TietzeTrace& t, const AbelianReplay& replay);

}  // namespace ordlim::io
