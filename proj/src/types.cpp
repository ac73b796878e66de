#include "patternforge/types.hpp"

#include <cmath>

#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

bool is_fraction(double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; }

void require_fraction(double v, const char* what) {
  if (!is_fraction(v)) {
    throw InvalidInputError(std::string(what) + " must lie in (0, 1], got " + std::to_string(v));
  }
}

}  // namespace

CoverageRate::CoverageRate(double value) : value_(value) { require_fraction(value, "coverage rate"); }

ExactMatchingRate::ExactMatchingRate(double value) : value_(value) {
  require_fraction(value, "exact matching rate");
}

const char* to_string(Mode mode) noexcept {
  switch (mode) {
    case Mode::Profile: return "profile";
    case Mode::DetectAuto: return "detect-auto";
    case Mode::DetectGuided: return "detect-guided";
  }
  return "profile";
}

void EngineConfig::validate() const {
  require_fraction(r_cov_init, "r_cov_init");
  if (n_subset == 0) throw InvalidInputError("n_subset must be at least 1");
  if (fixed_r_cov) require_fraction(*fixed_r_cov, "fixed r_cov");
  if (fixed_r_em) require_fraction(*fixed_r_em, "fixed r_em");
  if (const auto* st = std::get_if<StaticThreshold>(&selection)) {
    if (!std::isfinite(st->threshold) || st->threshold < 0.0 || st->threshold > 1.0) {
      throw InvalidInputError("static selection threshold must lie in [0, 1]");
    }
  }
  if (const auto* ff = std::get_if<FixedFractionSampling>(&sample_policy)) {
    require_fraction(ff->fraction, "sample fraction");
  }
}

}  // namespace patternforge
