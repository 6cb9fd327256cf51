#include "speq/error.hpp"

namespace speq {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::negative_coordinate: return "NegativeCoordinate";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::resolution_zero: return "ResolutionZero";
    case Errc::cell_out_of_range: return "CellOutOfRange";
    case Errc::map_leaves_simplex: return "MapLeavesSimplex";
    case Errc::missing_label: return "MissingLabel";
    case Errc::improper_labeling: return "ImproperLabeling";
    case Errc::zero_price_singular: return "ZeroPriceSingular";
    case Errc::all_zero_prices: return "AllZeroPrices";
    case Errc::labeling_failed: return "LabelingFailed";
    case Errc::not_fully_labeled: return "NotFullyLabeled";
    case Errc::walras_violation: return "WalrasViolation";
    case Errc::invalid_config: return "InvalidConfig";
  }
  return "UnknownError";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace speq
