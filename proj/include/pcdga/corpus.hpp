#pragma once

#include "pcdga/interleaving.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcdga {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One directory of the corpus: entry.ini plus the model, certificate and
// family files it names.
struct CorpusEntry {
    std::string name;   // directory name, e.g. even_sphere_trivial_vs_id_n1
    std::string alias;  // e.g. even_sphere_trivial_vs_id(1)
    std::string note;
    std::map<std::string, std::string> files;
    std::string a;
    std::string b;  // empty for single-model entries
    std::optional<Field> field;
    std::optional<int> cap;
    std::optional<mpq_class> eps_max;
    std::optional<std::string> family;
    std::vector<std::string> certificates;
    std::vector<std::pair<std::string, std::string>> expect;
};

// Reads entry.ini from `files`.
CorpusEntry parse_entry(std::map<std::string, std::string> files);

std::vector<std::string> corpus_names();
// Accepts the directory name or the alias; the returned entry has been
// loaded once (models pass d² and minimality checks).
CorpusEntry get(const std::string& name);
std::vector<CorpusEntry> all_entries();

CorpusEntry load_entry_dir(const std::string& dir);
std::vector<CorpusEntry> load_corpus_dir(const std::string& root);
void export_corpus(const std::string& root);

struct LoadedEntry {
    int cap = 0;
    Field field = Field::Q;
    std::vector<PersistenceCDGA> models;  // a, then b if present
    std::optional<MapFamily> family;
    std::vector<std::pair<std::string, InterleavingCertificate>> certificates;
};

// Models get algebra cap = cap + 1, where cap is the entry cap or the
// largest generator degree over both models plus 3.
LoadedEntry load(const CorpusEntry& e);

enum class Outcome { Pass, Fail, Inconclusive };

std::string outcome_name(Outcome o);

struct ExpectationResult {
    std::string key;
    std::string expected;
    std::string actual;
    Outcome outcome = Outcome::Pass;
};

struct EntryResult {
    std::string name;
    int cap = 0;
    std::vector<ExpectationResult> results;
    std::optional<std::string> error;

    bool ok() const;
    std::string str() const;
};

// Checks every [expect] key, plus lower bound ≤ certified ε and "no
// obstruction at a certified ε" whenever certificates are present.
EntryResult run_entry(const CorpusEntry& e);

namespace corpus_builders {
std::vector<std::map<std::string, std::string>> all();
}

}  // namespace pcdga
