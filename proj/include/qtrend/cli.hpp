#pragma once

namespace qtrend {

// Full command-line front end (ingest/score/enrich/train/forecast/report and
// the chained pipeline). Returns the process exit code; never throws.
int run_cli(int argc, const char* const* argv);

}  // namespace qtrend
