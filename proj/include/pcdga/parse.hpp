#pragma once

#include "pcdga/interleaving.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcdga {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

// `[name]` headed sections of `key = value` or bare lines; `#` starts a
// comment. Sections may repeat.
struct TextSection {
    std::string name;
    int line = 0;
    std::vector<std::pair<int, std::string>> lines;  // (line number, trimmed text)
};

std::vector<TextSection> read_sections(std::string_view text);
std::string trim(std::string_view s);
// Splits `key = value`; nullopt without '='.
std::optional<std::pair<std::string, std::string>> split_assignment(std::string_view line);
std::vector<std::string> split_list(std::string_view s, char sep = ',');

using NameResolver = std::function<std::optional<GenId>(std::string_view)>;

// element := [±] term (± term)*, term := item (('*' | '/') item)*,
// item := NUMBER | '(' element ')' | IDENT ['^' nat]. `i` is the imaginary
// unit over Q(i). Division is by nonzero constants only.
Element parse_element(std::string_view text, const FreeCDGA& alg, const NameResolver& resolve);
Element parse_element(std::string_view text, const FreeCDGA& alg);

struct ParsedModel {
    RelativeSullivanModel model;
    Field declared_field = Field::Q;
    std::optional<int> cap;
};

// Default cohomology cap: largest generator degree plus 3.
int default_cap(const FreeCDGA& a);

// `algebra_cap` of 0 picks (file cap or default cap) + 1.
ParsedModel parse_model(std::string_view text, std::optional<Field> field = {}, int algebra_cap = 0);
ParsedModel load_model(const std::string& path, std::optional<Field> field = {}, int algebra_cap = 0);
std::string serialize_model(const RelativeSullivanModel& m, std::optional<int> cap = {});

// Generator names carry an `A.` (first model) or `B.` (second model) prefix.
InterleavingCertificate parse_certificate(std::string_view text, const PersistenceCDGA& f, const PersistenceCDGA& g,
                                          std::uint32_t t_cap = 8);
InterleavingCertificate load_certificate(const std::string& path, const PersistenceCDGA& f, const PersistenceCDGA& g,
                                         std::uint32_t t_cap = 8);

// Family over the given stage-0 algebra; unlisted generators map to
// themselves in every branch.
MapFamily parse_family(std::string_view text, const AlgebraPtr& base);
MapFamily load_family(const std::string& path, const AlgebraPtr& base);

std::string read_file(const std::string& path);

}  // namespace pcdga
