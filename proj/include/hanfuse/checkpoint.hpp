#pragma once

#include <string>

#include "hanfuse/tagger.hpp"

namespace hanfuse {

// Single-file model checkpoint: magic + version header, strategy and shape
// metadata, the tag set, then named parameter segments as little-endian
// 64-bit floats. Loading rebuilds the layout from the header and validates
// every segment name and shape against it.
void save_model(const TaggerModel& model, const std::string& path);
TaggerModel load_model(const std::string& path);

}  // namespace hanfuse
