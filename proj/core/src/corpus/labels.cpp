#include "gazener/corpus/labels.hpp"

namespace gazener::corpus {

std::string_view entity_class_name(EntityClass cls) noexcept {
  switch (cls) {
    case EntityClass::Person: return "PERSON";
    case EntityClass::Organization: return "ORGANIZATION";
    case EntityClass::Location: return "LOCATION";
  }
  return "?";
}

std::string_view tag_name(Tag tag) noexcept {
  switch (tag) {
    case Tag::O: return "O";
    case Tag::BeginPerson: return "B-PERSON";
    case Tag::InsidePerson: return "I-PERSON";
    case Tag::BeginOrganization: return "B-ORGANIZATION";
    case Tag::InsideOrganization: return "I-ORGANIZATION";
    case Tag::BeginLocation: return "B-LOCATION";
    case Tag::InsideLocation: return "I-LOCATION";
  }
  return "?";
}

std::optional<Tag> parse_tag(std::string_view text) noexcept {
  if (text == "O") return Tag::O;
  if (text.size() < 3 || text[1] != '-') return std::nullopt;
  const bool begin = text[0] == 'B';
  if (!begin && text[0] != 'I') return std::nullopt;
  const auto name = text.substr(2);
  std::optional<EntityClass> cls;
  if (name == "PERSON" || name == "PER") cls = EntityClass::Person;
  else if (name == "ORGANIZATION" || name == "ORG") cls = EntityClass::Organization;
  else if (name == "LOCATION" || name == "LOC") cls = EntityClass::Location;
  if (!cls) return std::nullopt;
  return begin ? begin_tag(*cls) : inside_tag(*cls);
}

std::optional<EntityClass> entity_class(Tag tag) noexcept {
  switch (tag) {
    case Tag::BeginPerson:
    case Tag::InsidePerson: return EntityClass::Person;
    case Tag::BeginOrganization:
    case Tag::InsideOrganization: return EntityClass::Organization;
    case Tag::BeginLocation:
    case Tag::InsideLocation: return EntityClass::Location;
    case Tag::O: break;
  }
  return std::nullopt;
}

Tag begin_tag(EntityClass cls) noexcept {
  return static_cast<Tag>(1 + 2 * static_cast<int>(cls));
}

Tag inside_tag(EntityClass cls) noexcept {
  return static_cast<Tag>(2 + 2 * static_cast<int>(cls));
}

bool is_iob_well_formed(std::span<const Tag> tags) noexcept {
  std::optional<EntityClass> open;
  for (const Tag tag : tags) {
    if (is_inside(tag) && open != entity_class(tag)) return false;
    open = entity_class(tag);
  }
  return true;
}

std::size_t repair_iob(std::span<Tag> tags) noexcept {
  std::size_t repairs = 0;
  std::optional<EntityClass> open;
  for (Tag& tag : tags) {
    if (is_inside(tag) && open != entity_class(tag)) {
      tag = begin_tag(*entity_class(tag));
      ++repairs;
    }
    open = entity_class(tag);
  }
  return repairs;
}

}  // namespace gazener::corpus
