#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "lclogit/coding.hpp"

namespace lclogit {

enum class AttributeKind { categorical, continuous };

// How an attribute enters design matrices and utilities:
//   linear / quadratic  orthogonal-polynomial codes up to that degree
//   none                raw value divided by `scale`
//   effects_coded       sum-to-zero indicators (categorical only)
enum class Transform { none, linear, quadratic, effects_coded };

struct AttributeSpec {
  std::string name;
  AttributeKind kind = AttributeKind::continuous;
  std::vector<std::string> labels;  // categorical levels, in declared order
  std::vector<double> values;       // continuous levels, strictly ascending
  Transform transform = Transform::linear;
  double scale = 1.0;  // divisor when transform == none

  int n_levels() const {
    return static_cast<int>(kind == AttributeKind::categorical ? labels.size()
                                                               : values.size());
  }
};

// Validated bundle of attribute specs. Exactly one categorical attribute is
// required; it plays the role of the policy category that per-class fixities
// and scoped utility terms refer to.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<AttributeSpec> attributes);

  const std::vector<AttributeSpec>& attributes() const { return attributes_; }
  const AttributeSpec& category() const;
  const std::vector<std::string>& categories() const;
  int category_index(const std::string& label) const;  // -1 when unknown

  int n_continuous() const { return static_cast<int>(continuous_.size()); }
  // Slot of a continuous attribute by name, -1 when unknown.
  int continuous_slot(const std::string& name) const;
  const AttributeSpec& continuous(int slot) const;

  bool empty() const { return attributes_.empty(); }

 private:
  std::vector<AttributeSpec> attributes_;
  int category_pos_ = -1;
  std::vector<int> continuous_;  // positions into attributes_
};

struct RespondentProfile {
  std::string id;
  Eigen::VectorXd covariates;  // aligned with Dataset::covariate_names
};

struct ReferendumTask {
  long task_id = 0;
  long block_id = 0;
  int category = 0;        // index into schema categories
  Eigen::VectorXd values;  // continuous attributes in schema slot order
};

struct Observation {
  int respondent = 0;  // index into Dataset::respondents
  ReferendumTask task;
  bool vote_yes = false;
};

struct Dataset {
  AttributeSchema schema;
  std::vector<std::string> covariate_names;
  std::vector<RespondentProfile> respondents;
  // Grouped by respondent (respondent-file order), original task order kept
  // within each respondent.
  std::vector<Observation> observations;
  std::vector<std::pair<int, int>> respondent_obs;  // [begin, end) per respondent

  int respondent_index(const std::string& id) const;  // -1 when unknown
  int covariate_index(const std::string& name) const;  // -1 when unknown
};

// Optional per-covariate validation applied at load time.
enum class CovariateType { numeric, indicator, count, likert5 };

Dataset load_dataset(
    const std::string& observations_path, const std::string& respondents_path,
    const AttributeSchema& schema,
    const std::map<std::string, CovariateType>& covariate_types = {});

// Assembles a Dataset from in-memory parts, running the same validation as
// load_dataset (grouping, duplicate checks, level membership).
Dataset make_dataset(AttributeSchema schema,
                     std::vector<std::string> covariate_names,
                     std::vector<RespondentProfile> respondents,
                     std::vector<std::pair<std::string, ReferendumTask>> obs,
                     std::vector<bool> votes,
                     const std::map<std::string, CovariateType>& covariate_types = {});

void write_observations_csv(const Dataset& dataset, const std::string& path);
void write_respondents_csv(const Dataset& dataset, const std::string& path);

// Task-only CSV (the design export format).
void write_design_csv(const std::vector<ReferendumTask>& tasks,
                      const AttributeSchema& schema, const std::string& path);
std::vector<ReferendumTask> read_design_csv(const std::string& path,
                                            const AttributeSchema& schema);

// Per-attribute codings derived from the schema transforms.
class CodedSchema {
 public:
  CodedSchema() = default;
  explicit CodedSchema(const AttributeSchema& schema);

  const AttributeSchema& schema() const { return *schema_; }
  // Highest code degree available for a continuous slot (transform none
  // counts as degree 1: the scaled raw value).
  int degrees(int slot) const;
  double coded(int slot, double x, int degree) const;
  double coded_derivative(int slot, double x, int degree) const;

 private:
  const AttributeSchema* schema_ = nullptr;
  std::vector<std::shared_ptr<const PolyCoding>> codings_;  // null for none
};

struct DesignMatrix {
  std::vector<std::string> column_names;
  Eigen::MatrixXd rows;  // one row per observation
};

// Numeric encoding of all observations: category indicators (or effects
// codes) followed by the coded columns of each continuous attribute, in
// schema order. Pure function of task attributes and the schema transforms.
DesignMatrix build_design_matrix(const Dataset& dataset);

Dataset filter_respondents(const Dataset& dataset,
                           const std::vector<bool>& keep);

}  // namespace lclogit
