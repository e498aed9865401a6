#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gazener/gaze/binning.hpp"
#include "gazener/gaze/lexicon.hpp"
#include "gazener/nn/model.hpp"

namespace gazener::nn {

// How a checkpoint obtains gaze bins for new text.
enum class GazeSource { None, Token, Lexicon };

std::string_view gaze_source_name(GazeSource source) noexcept;
std::optional<GazeSource> parse_gaze_source(std::string_view text) noexcept;

struct Checkpoint {
  TaggerModel model;
  GazeSource gaze_source = GazeSource::None;
  std::optional<gaze::BinThresholds> thresholds;  // token mode
  std::optional<gaze::TypeLexicon> lexicon;       // lexicon mode
};

// Versioned text container; doubles are written in shortest round-trip form,
// so save(load(x)) reproduces the bytes.
void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
void save_checkpoint_file(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(std::istream& in, const std::string& source_name = "<stream>");
Checkpoint load_checkpoint_file(const std::filesystem::path& path);

}  // namespace gazener::nn
