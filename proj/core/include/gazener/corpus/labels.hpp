#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace gazener::corpus {

enum class EntityClass : std::uint8_t { Person = 0, Organization = 1, Location = 2 };

inline constexpr std::size_t kEntityClassCount = 3;
inline constexpr std::array<EntityClass, kEntityClassCount> kEntityClasses = {
    EntityClass::Person, EntityClass::Organization, EntityClass::Location};

// The closed IOB tag set. The numeric value is the label index used by the tagger.
enum class Tag : std::uint8_t {
  O = 0,
  BeginPerson,
  InsidePerson,
  BeginOrganization,
  InsideOrganization,
  BeginLocation,
  InsideLocation,
};

inline constexpr std::size_t kTagCount = 7;

std::string_view entity_class_name(EntityClass cls) noexcept;

// Canonical spelling: "O", "B-PERSON", "I-LOCATION", ...
std::string_view tag_name(Tag tag) noexcept;

// Accepts canonical names and the short CoNLL aliases (B-PER, I-ORG, B-LOC).
std::optional<Tag> parse_tag(std::string_view text) noexcept;

constexpr Tag tag_from_index(std::size_t index) noexcept { return static_cast<Tag>(index); }
constexpr std::size_t tag_index(Tag tag) noexcept { return static_cast<std::size_t>(tag); }

constexpr bool is_begin(Tag tag) noexcept {
  return tag == Tag::BeginPerson || tag == Tag::BeginOrganization || tag == Tag::BeginLocation;
}
constexpr bool is_inside(Tag tag) noexcept {
  return tag == Tag::InsidePerson || tag == Tag::InsideOrganization || tag == Tag::InsideLocation;
}

// Entity class of a B-/I- tag; nullopt for O.
std::optional<EntityClass> entity_class(Tag tag) noexcept;

Tag begin_tag(EntityClass cls) noexcept;
Tag inside_tag(EntityClass cls) noexcept;

// True when every I-X directly follows B-X or I-X.
bool is_iob_well_formed(std::span<const Tag> tags) noexcept;

// Rewrites each stray I-X as B-X. Returns the number of repairs.
std::size_t repair_iob(std::span<Tag> tags) noexcept;

}  // namespace gazener::corpus
