#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lclogit/choice_data.hpp"

namespace lclogit {

// trader     all categories estimated
// pinned_yes deterministic; every category pinned, default yes
// pinned_no  deterministic; every category pinned, default no
// partial    at least one estimated and one pinned category
enum class ClassKind { trader, pinned_yes, pinned_no, partial };

enum class Fixity { estimated, pinned_yes, pinned_no };

enum class TermType { constant, attribute, covariate };
enum class TermTransform { linear, quadratic };

// One estimated entry of a class's yes-utility. `scope` restricts the term to
// tasks of one category ("all" applies it to every estimated category).
struct UtilityTerm {
  TermType type = TermType::constant;
  std::string name;  // attribute or covariate name; empty for constants
  TermTransform transform = TermTransform::linear;
  std::string scope = "all";

  std::string id(const std::string& class_name) const;
  bool operator==(const UtilityTerm&) const = default;
};

struct ClassSpec {
  std::string name;
  ClassKind kind = ClassKind::trader;
  bool membership_base = false;
  // Per-category overrides; categories not listed take the kind's default
  // (trader -> estimated, pinned_yes -> pinned_yes, pinned_no -> pinned_no,
  // partial -> no default, every category must be listed).
  std::map<std::string, Fixity> fixity;
  std::vector<UtilityTerm> terms;
  std::vector<std::string> membership_covariates;

  Fixity category_fixity(const std::string& category) const;
};

struct MembershipSpec {
  std::string base_class;
};

struct ModelSpec {
  std::vector<ClassSpec> classes;
  double mu = 1.0;  // Gumbel scale, fixed (not estimated)

  int class_index(const std::string& name) const;  // -1 when unknown
  std::vector<int> base_indices() const;
  // Throws unless exactly one base class is flagged.
  MembershipSpec membership() const;
};

// Canonical order: per class (declaration order) the utility terms, then per
// non-base class the membership constant followed by its covariates.
class ParameterIndex {
 public:
  struct Entry {
    enum class Block { utility, membership };
    Block block;
    int class_index;
    std::string name;  // canonical, unique
  };

  static std::shared_ptr<const ParameterIndex> build(const ModelSpec& spec);

  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<Entry>& entries() const { return entries_; }
  int position(const std::string& name) const;  // -1 when unknown
  // [offset, count) of a class's utility / membership block.
  std::pair<int, int> utility_slice(int class_index) const;
  std::pair<int, int> membership_slice(int class_index) const;

 private:
  std::vector<Entry> entries_;
  std::map<std::string, int> by_name_;
  std::vector<std::pair<int, int>> utility_slices_;
  std::vector<std::pair<int, int>> membership_slices_;
};

struct ParameterVector {
  Eigen::VectorXd values;
  std::shared_ptr<const ParameterIndex> index;
};

// pack/unpack are exact inverses. pack rejects unknown or missing names;
// unpack rejects a vector whose length disagrees with its index.
ParameterVector pack(const std::shared_ptr<const ParameterIndex>& index,
                     const std::map<std::string, double>& named);
std::map<std::string, double> unpack(const ParameterVector& params);

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate_spec(const ModelSpec& spec,
                               const AttributeSchema& schema,
                               const std::vector<std::string>& covariate_names);
ValidationReport validate_spec(const ModelSpec& spec, const Dataset& dataset);

int count_free_parameters(const ModelSpec& spec);

// JSON (.spec file) round trip.
ModelSpec load_model_spec(const std::string& path);
ModelSpec model_spec_from_json_text(const std::string& text);
std::string model_spec_to_json_text(const ModelSpec& spec);
std::uint64_t model_spec_hash(const ModelSpec& spec);

const char* to_string(ClassKind kind);
const char* to_string(Fixity fixity);

}  // namespace lclogit
