#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>

#include "gazener/corpus/token.hpp"
#include "gazener/gaze/raw_gaze_vector.hpp"

namespace gazener::corpus {

// sent_id -> (whitespace group -> reader-averaged measures)
using AveragedGaze = std::map<int, std::map<int, gaze::RawGazeVector>>;

// CSV with header `sent_id,word_index,<17 feature names>`; "NA" marks an unknown value.
AveragedGaze parse_averaged_gaze_file(const std::filesystem::path& path,
                                      std::span<const Sentence> sentences);
AveragedGaze parse_averaged_gaze_stream(std::istream& in, std::span<const Sentence> sentences,
                                        const std::string& source_name = "<stream>");

void write_averaged_gaze_stream(std::ostream& out, const AveragedGaze& gaze);

std::string averaged_gaze_header();

}  // namespace gazener::corpus
