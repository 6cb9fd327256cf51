#pragma once

#include <stdexcept>
#include <string>

namespace speq {

enum class Errc {
  negative_coordinate,
  not_normalized,
  resolution_zero,
  cell_out_of_range,
  map_leaves_simplex,
  missing_label,
  improper_labeling,
  zero_price_singular,
  all_zero_prices,
  labeling_failed,
  not_fully_labeled,
  walras_violation,
  invalid_config,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace speq
