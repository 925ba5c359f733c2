#pragma once

#include <iostream>
#include <string>

#include "cama/episode.hpp"

namespace cama {

// Appends one JSON object per line to a stream: episode_meta, then per
// trial its step records, a trial_end, and a snapshot record, and finally
// episode_end. Every line carries a "ts" timestamp field; the episode
// content hash covers trials and snapshots only, so two runs of the same
// script produce byte-identical traces except for "ts".
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out) : out_(&out) {}

  void episode_meta(const EpisodeRecord& header);
  void step(int trial, int index, const TrialStep& s);
  void trial_end(int trial, const TrialTrace& t);
  void snapshot(int trial, const MemorySnapshot& s);
  void episode_end(const EpisodeRecord& record);

 private:
  void write(nlohmann::json j);
  std::ostream* out_;
};

// Reads a trace back into a self-contained EpisodeRecord (bundle
// embedded). Throws TraceIoError with the source and 1-based line number
// on malformed input.
EpisodeRecord read_trace(std::istream& in,
                         const std::string& source = "<stream>");
EpisodeRecord read_trace_file(const std::string& path);

}  // namespace cama
