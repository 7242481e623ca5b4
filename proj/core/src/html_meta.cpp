// Tolerant scan for descriptive <meta> elements. This is not a full HTML5
// tokenizer: it recognises tags, attributes (any quoting, any order),
// comments, and the raw-text bodies of <script>/<style>/<title>/<textarea>,
// and treats a tag cut off by end of input as complete.

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "phishrev/dataset.hpp"
#include "phishrev/text.hpp"

namespace phishrev {

namespace {

constexpr std::array<std::string_view, 4> kDescriptiveNames = {"description", "keywords",
                                                               "keyword", "author"};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

struct Tag {
  std::string name;
  std::optional<std::string> name_attr;
  std::optional<std::string> content_attr;
};

class Scanner {
 public:
  explicit Scanner(std::string_view html) : s_(html) {}

  bool find_descriptive_meta() {
    while (pos_ < s_.size()) {
      const auto lt = s_.find('<', pos_);
      if (lt == std::string_view::npos) return false;
      pos_ = lt + 1;
      if (starts_with("!--")) {
        skip_past("-->");
      } else if (starts_with("!") || starts_with("?") || starts_with("/")) {
        skip_past(">");
      } else if (pos_ < s_.size() && is_alpha(s_[pos_])) {
        const Tag tag = read_tag();
        if (tag.name == "meta" && is_descriptive(tag)) return true;
        if (tag.name == "script" || tag.name == "style" || tag.name == "title" || tag.name == "textarea")
          skip_raw_text(tag.name);
      }
    }
    return false;
  }

 private:
  static bool is_descriptive(const Tag& tag) {
    if (!tag.name_attr || !tag.content_attr) return false;
    const auto name = text::to_lower(text::trim(*tag.name_attr));
    bool known = false;
    for (auto n : kDescriptiveNames) known = known || name == n;
    return known && !text::trim(*tag.content_attr).empty();
  }

  bool starts_with(std::string_view prefix) const {
    return s_.substr(pos_).substr(0, prefix.size()) == prefix;
  }

  void skip_past(std::string_view marker) {
    const auto at = s_.find(marker, pos_);
    pos_ = at == std::string_view::npos ? s_.size() : at + marker.size();
  }

  void skip_raw_text(const std::string& name) {
    const std::string closing = "</" + name;
    while (pos_ < s_.size()) {
      const auto at = s_.find("</", pos_);
      if (at == std::string_view::npos) {
        pos_ = s_.size();
        return;
      }
      if (text::iequals(s_.substr(at, closing.size()), closing)) {
        pos_ = at;
        return;
      }
      pos_ = at + 2;
    }
  }

  void skip_spaces() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  Tag read_tag() {
    Tag tag;
    const auto start = pos_;
    while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '>' && s_[pos_] != '/') ++pos_;
    tag.name = text::to_lower(s_.substr(start, pos_ - start));

    while (pos_ < s_.size()) {
      skip_spaces();
      if (pos_ >= s_.size()) break;
      if (s_[pos_] == '>') {
        ++pos_;
        break;
      }
      if (s_[pos_] == '/') {
        ++pos_;
        continue;
      }
      const auto name_start = pos_;
      ++pos_;  // first character may be '=' per the tokenizer rules
      while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '>' && s_[pos_] != '/' &&
             s_[pos_] != '=')
        ++pos_;
      const auto attr = text::to_lower(s_.substr(name_start, pos_ - name_start));

      std::string value;
      const auto before_eq = pos_;
      skip_spaces();
      if (pos_ < s_.size() && s_[pos_] == '=') {
        ++pos_;
        skip_spaces();
        value = read_value();
      } else {
        pos_ = before_eq;
      }

      // Duplicate attributes: the first occurrence wins.
      if (attr == "name" && !tag.name_attr) tag.name_attr = value;
      if (attr == "content" && !tag.content_attr) tag.content_attr = value;
    }
    return tag;
  }

  std::string read_value() {
    if (pos_ >= s_.size()) return {};
    const char q = s_[pos_];
    if (q == '"' || q == '\'') {
      ++pos_;
      const auto end = s_.find(q, pos_);
      const auto stop = end == std::string_view::npos ? s_.size() : end;
      std::string v(s_.substr(pos_, stop - pos_));
      pos_ = end == std::string_view::npos ? s_.size() : end + 1;
      return v;
    }
    const auto start = pos_;
    while (pos_ < s_.size() && !is_space(s_[pos_]) && s_[pos_] != '>') ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

bool extract_meta_presence(std::string_view html) {
  return Scanner(html).find_descriptive_meta();
}

}  // namespace phishrev
