#pragma once

#include <iosfwd>
#include <string>

#include "qtrend/lstm.hpp"
#include "qtrend/train.hpp"

namespace qtrend {

// Parameter block: a "dims <input> <hidden> <output>" line followed by one
// labeled line per array (W_i U_i b_i W_f U_f b_f W_g U_g b_g W_o U_o b_o V c),
// row-major, hex floats. load(save(m)) == m bitwise.
void write_parameters(std::ostream& out, const LstmParameters& params);
LstmParameters read_parameters(std::istream& in, const std::string& origin);

// Whole checkpoint: "qtrend-checkpoint 1" header, mode/window, the fitted
// scaler, then one parameter block per model.
void save_checkpoint(const std::string& path, const TrainedModel& model);
TrainedModel load_checkpoint(const std::string& path);

}  // namespace qtrend
