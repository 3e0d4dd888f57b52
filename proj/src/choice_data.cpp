#include "lclogit/choice_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lclogit/common.hpp"
#include "lclogit/csv.hpp"

namespace lclogit {

namespace {

bool value_matches_level(double value, double level) {
  return std::abs(value - level) <= 1e-9 * std::max(1.0, std::abs(level));
}

int find_level(const AttributeSpec& attr, double value) {
  for (std::size_t i = 0; i < attr.values.size(); ++i) {
    if (value_matches_level(value, attr.values[i])) return static_cast<int>(i);
  }
  return -1;
}

void validate_attribute(const AttributeSpec& attr) {
  if (attr.name.empty()) throw Error("attribute with empty name");
  if (attr.kind == AttributeKind::categorical) {
    if (attr.labels.empty()) {
      throw Error("attribute '" + attr.name + "': no levels");
    }
    std::set<std::string> seen(attr.labels.begin(), attr.labels.end());
    if (seen.size() != attr.labels.size()) {
      throw Error("attribute '" + attr.name + "': duplicate levels");
    }
    if (attr.transform != Transform::none &&
        attr.transform != Transform::effects_coded) {
      throw Error("attribute '" + attr.name +
                  "': categorical attributes take transform none or "
                  "effects_coded");
    }
  } else {
    if (attr.values.empty()) {
      throw Error("attribute '" + attr.name + "': no levels");
    }
    for (std::size_t i = 1; i < attr.values.size(); ++i) {
      if (!(attr.values[i] > attr.values[i - 1])) {
        throw Error("attribute '" + attr.name +
                    "': levels must be distinct and ascending");
      }
    }
    if (attr.transform == Transform::quadratic && attr.values.size() < 3) {
      throw Error("attribute '" + attr.name +
                  "': quadratic coding needs at least 3 levels");
    }
    if (attr.transform == Transform::effects_coded) {
      throw Error("attribute '" + attr.name +
                  "': effects coding applies to categorical attributes");
    }
    if (attr.transform == Transform::none && !(attr.scale > 0.0)) {
      throw Error("attribute '" + attr.name + "': scale must be positive");
    }
  }
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<AttributeSpec> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty()) throw Error("attribute schema is empty");
  std::set<std::string> names;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const auto& attr = attributes_[i];
    validate_attribute(attr);
    if (!names.insert(attr.name).second) {
      throw Error("duplicate attribute name '" + attr.name + "'");
    }
    if (attr.kind == AttributeKind::categorical) {
      if (category_pos_ >= 0) {
        throw Error("schema must contain exactly one categorical attribute");
      }
      category_pos_ = static_cast<int>(i);
    } else {
      continuous_.push_back(static_cast<int>(i));
    }
  }
  if (category_pos_ < 0) {
    throw Error("schema must contain exactly one categorical attribute");
  }
}

const AttributeSpec& AttributeSchema::category() const {
  if (category_pos_ < 0) throw Error("schema not initialized");
  return attributes_[category_pos_];
}

const std::vector<std::string>& AttributeSchema::categories() const {
  return category().labels;
}

int AttributeSchema::category_index(const std::string& label) const {
  const auto& labels = categories();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return static_cast<int>(i);
  }
  return -1;
}

int AttributeSchema::continuous_slot(const std::string& name) const {
  for (std::size_t i = 0; i < continuous_.size(); ++i) {
    if (attributes_[continuous_[i]].name == name) return static_cast<int>(i);
  }
  return -1;
}

const AttributeSpec& AttributeSchema::continuous(int slot) const {
  return attributes_[continuous_.at(slot)];
}

int Dataset::respondent_index(const std::string& id) const {
  for (std::size_t i = 0; i < respondents.size(); ++i) {
    if (respondents[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

int Dataset::covariate_index(const std::string& name) const {
  for (std::size_t i = 0; i < covariate_names.size(); ++i) {
    if (covariate_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

void check_covariate_value(const std::string& name, double value,
                           CovariateType type, const std::string& where) {
  switch (type) {
    case CovariateType::numeric:
      break;
    case CovariateType::indicator:
      if (value != 0.0 && value != 1.0) {
        throw Error(where + ": covariate '" + name +
                    "' must be 0 or 1, got " + format_double(value));
      }
      break;
    case CovariateType::count:
      if (value < 0.0) {
        throw Error(where + ": covariate '" + name +
                    "' must be nonnegative, got " + format_double(value));
      }
      break;
    case CovariateType::likert5:
      if (value < 1.0 || value > 5.0) {
        throw Error(where + ": covariate '" + name +
                    "' must lie in [1, 5], got " + format_double(value));
      }
      break;
  }
}

struct GroupedObservations {
  std::vector<Observation> observations;
  std::vector<std::pair<int, int>> respondent_obs;
};

// Groups raw observations by respondent (respondent order), keeping the
// original order within each respondent, and runs the duplicate / coverage
// checks shared by the file loader and the in-memory builder.
GroupedObservations group_observations(
    const std::vector<RespondentProfile>& respondents,
    std::vector<std::pair<int, Observation>>&& raw /* respondent idx, obs */) {
  const int n_resp = static_cast<int>(respondents.size());
  std::vector<std::vector<Observation>> per_respondent(n_resp);
  std::set<std::pair<int, long>> seen;
  for (auto& [resp, obs] : raw) {
    if (!seen.insert({resp, obs.task.task_id}).second) {
      throw Error("duplicate (respondent, task): respondent '" +
                  respondents[resp].id + "', task " +
                  std::to_string(obs.task.task_id));
    }
    per_respondent[resp].push_back(std::move(obs));
  }

  GroupedObservations out;
  out.respondent_obs.reserve(n_resp);
  for (int r = 0; r < n_resp; ++r) {
    if (per_respondent[r].empty()) {
      throw Error("respondent '" + respondents[r].id + "' has no observations");
    }
    const int begin = static_cast<int>(out.observations.size());
    for (auto& obs : per_respondent[r]) {
      obs.respondent = r;
      out.observations.push_back(std::move(obs));
    }
    out.respondent_obs.emplace_back(begin,
                                    static_cast<int>(out.observations.size()));
  }
  return out;
}

ReferendumTask parse_task_fields(
    const AttributeSchema& schema, const std::vector<std::string>& fields,
    const std::vector<int>& attr_cols, long task_id, long block_id,
    const std::string& path, std::size_t file_row) {
  ReferendumTask task;
  task.task_id = task_id;
  task.block_id = block_id;
  task.values = Eigen::VectorXd::Zero(schema.n_continuous());
  int slot = 0;
  for (std::size_t a = 0; a < schema.attributes().size(); ++a) {
    const auto& attr = schema.attributes()[a];
    const std::string& field = fields[attr_cols[a]];
    if (attr.kind == AttributeKind::categorical) {
      const int idx = schema.category_index(field);
      if (idx < 0) {
        throw Error(path + ":" + std::to_string(file_row) + ": attribute '" +
                    attr.name + "': unknown level '" + field + "'");
      }
      task.category = idx;
    } else {
      const double value = parse_csv_double(field, path, file_row, attr.name);
      if (find_level(attr, value) < 0) {
        throw Error(path + ":" + std::to_string(file_row) + ": attribute '" +
                    attr.name + "': value " + format_double(value) +
                    " not in the level set");
      }
      task.values[slot] = value;
      ++slot;
    }
  }
  return task;
}

}  // namespace

Dataset load_dataset(const std::string& observations_path,
                     const std::string& respondents_path,
                     const AttributeSchema& schema,
                     const std::map<std::string, CovariateType>& covariate_types) {
  if (schema.empty()) throw Error("load_dataset: empty schema");

  Dataset dataset;
  dataset.schema = schema;

  // Respondents file: respondent_id plus covariate columns, file order kept.
  const CsvTable resp_csv = read_csv(respondents_path);
  const int id_col = resp_csv.column("respondent_id");
  if (id_col < 0) {
    throw Error(respondents_path + ": missing column 'respondent_id'");
  }
  for (std::size_t c = 0; c < resp_csv.header.size(); ++c) {
    if (static_cast<int>(c) != id_col) {
      dataset.covariate_names.push_back(resp_csv.header[c]);
    }
  }
  std::unordered_map<std::string, int> resp_index;
  for (std::size_t r = 0; r < resp_csv.rows.size(); ++r) {
    const auto& row = resp_csv.rows[r];
    const std::size_t file_row = r + 2;
    RespondentProfile profile;
    profile.id = row[id_col];
    if (profile.id.empty()) {
      throw Error(respondents_path + ":" + std::to_string(file_row) +
                  ": empty respondent_id");
    }
    if (resp_index.count(profile.id)) {
      throw Error(respondents_path + ":" + std::to_string(file_row) +
                  ": duplicate respondent '" + profile.id + "'");
    }
    profile.covariates =
        Eigen::VectorXd::Zero(static_cast<int>(dataset.covariate_names.size()));
    int k = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (static_cast<int>(c) == id_col) continue;
      const std::string& name = resp_csv.header[c];
      if (row[c].empty()) {
        throw Error(respondents_path + ":" + std::to_string(file_row) +
                    ": missing value for covariate '" + name + "'");
      }
      const double value =
          parse_csv_double(row[c], respondents_path, file_row, name);
      auto it = covariate_types.find(name);
      if (it != covariate_types.end()) {
        check_covariate_value(name, value, it->second,
                              respondents_path + ":" + std::to_string(file_row));
      }
      profile.covariates[k++] = value;
    }
    resp_index[profile.id] = static_cast<int>(dataset.respondents.size());
    dataset.respondents.push_back(std::move(profile));
  }

  // Observations file.
  const CsvTable obs_csv = read_csv(observations_path);
  for (const char* required : {"respondent_id", "task_id", "block_id", "vote"}) {
    if (obs_csv.column(required) < 0) {
      throw Error(observations_path + ": missing column '" +
                  std::string(required) + "'");
    }
  }
  std::vector<int> attr_cols(schema.attributes().size());
  for (std::size_t a = 0; a < schema.attributes().size(); ++a) {
    attr_cols[a] = obs_csv.column(schema.attributes()[a].name);
    if (attr_cols[a] < 0) {
      throw Error(observations_path + ": missing column '" +
                  schema.attributes()[a].name + "'");
    }
  }
  if (obs_csv.rows.empty()) throw Error(observations_path + ": no observations");

  const int obs_id_col = obs_csv.column("respondent_id");
  const int task_col = obs_csv.column("task_id");
  const int block_col = obs_csv.column("block_id");
  const int vote_col = obs_csv.column("vote");

  std::vector<std::pair<int, Observation>> raw;
  raw.reserve(obs_csv.rows.size());
  for (std::size_t r = 0; r < obs_csv.rows.size(); ++r) {
    const auto& row = obs_csv.rows[r];
    const std::size_t file_row = r + 2;
    auto it = resp_index.find(row[obs_id_col]);
    if (it == resp_index.end()) {
      throw Error(observations_path + ":" + std::to_string(file_row) +
                  ": unknown respondent '" + row[obs_id_col] + "'");
    }
    Observation obs;
    obs.task = parse_task_fields(
        schema, row, attr_cols,
        parse_csv_long(row[task_col], observations_path, file_row, "task_id"),
        parse_csv_long(row[block_col], observations_path, file_row, "block_id"),
        observations_path, file_row);
    const std::string& vote = row[vote_col];
    if (vote == "1") {
      obs.vote_yes = true;
    } else if (vote == "0") {
      obs.vote_yes = false;
    } else {
      throw Error(observations_path + ":" + std::to_string(file_row) +
                  ": vote must be 0 or 1, got '" + vote + "'");
    }
    raw.emplace_back(it->second, std::move(obs));
  }

  auto grouped = group_observations(dataset.respondents, std::move(raw));
  dataset.observations = std::move(grouped.observations);
  dataset.respondent_obs = std::move(grouped.respondent_obs);
  return dataset;
}

Dataset make_dataset(AttributeSchema schema,
                     std::vector<std::string> covariate_names,
                     std::vector<RespondentProfile> respondents,
                     std::vector<std::pair<std::string, ReferendumTask>> obs,
                     std::vector<bool> votes,
                     const std::map<std::string, CovariateType>& covariate_types) {
  if (obs.size() != votes.size()) {
    throw Error("make_dataset: observation/vote length mismatch");
  }
  if (obs.empty()) throw Error("make_dataset: no observations");

  Dataset dataset;
  dataset.schema = std::move(schema);
  dataset.covariate_names = std::move(covariate_names);
  dataset.respondents = std::move(respondents);

  std::unordered_map<std::string, int> resp_index;
  for (std::size_t i = 0; i < dataset.respondents.size(); ++i) {
    const auto& profile = dataset.respondents[i];
    if (profile.covariates.size() !=
        static_cast<Eigen::Index>(dataset.covariate_names.size())) {
      throw Error("make_dataset: respondent '" + profile.id +
                  "' covariate length mismatch");
    }
    for (std::size_t c = 0; c < dataset.covariate_names.size(); ++c) {
      auto it = covariate_types.find(dataset.covariate_names[c]);
      if (it != covariate_types.end()) {
        check_covariate_value(dataset.covariate_names[c],
                              profile.covariates[static_cast<int>(c)],
                              it->second, "respondent '" + profile.id + "'");
      }
    }
    if (!resp_index.emplace(profile.id, static_cast<int>(i)).second) {
      throw Error("make_dataset: duplicate respondent '" + profile.id + "'");
    }
  }

  std::vector<std::pair<int, Observation>> raw;
  raw.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    auto it = resp_index.find(obs[i].first);
    if (it == resp_index.end()) {
      throw Error("make_dataset: unknown respondent '" + obs[i].first + "'");
    }
    const auto& task = obs[i].second;
    if (task.category < 0 ||
        task.category >= static_cast<int>(dataset.schema.categories().size())) {
      throw Error("make_dataset: task " + std::to_string(task.task_id) +
                  ": category index out of range");
    }
    Observation o;
    o.task = task;
    o.vote_yes = votes[i];
    raw.emplace_back(it->second, std::move(o));
  }

  auto grouped = group_observations(dataset.respondents, std::move(raw));
  dataset.observations = std::move(grouped.observations);
  dataset.respondent_obs = std::move(grouped.respondent_obs);
  return dataset;
}

namespace {

std::vector<std::string> task_fields(const ReferendumTask& task,
                                     const AttributeSchema& schema) {
  std::vector<std::string> fields;
  fields.push_back(std::to_string(task.task_id));
  fields.push_back(std::to_string(task.block_id));
  int slot = 0;
  for (const auto& attr : schema.attributes()) {
    if (attr.kind == AttributeKind::categorical) {
      fields.push_back(schema.categories()[task.category]);
    } else {
      fields.push_back(format_double(task.values[slot++]));
    }
  }
  return fields;
}

std::vector<std::string> task_header(const AttributeSchema& schema) {
  std::vector<std::string> header = {"task_id", "block_id"};
  for (const auto& attr : schema.attributes()) header.push_back(attr.name);
  return header;
}

}  // namespace

void write_observations_csv(const Dataset& dataset, const std::string& path) {
  CsvTable table;
  table.header.push_back("respondent_id");
  for (const auto& h : task_header(dataset.schema)) table.header.push_back(h);
  table.header.push_back("vote");
  for (const auto& obs : dataset.observations) {
    std::vector<std::string> row;
    row.push_back(dataset.respondents[obs.respondent].id);
    for (auto& f : task_fields(obs.task, dataset.schema)) row.push_back(f);
    row.push_back(obs.vote_yes ? "1" : "0");
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

void write_respondents_csv(const Dataset& dataset, const std::string& path) {
  CsvTable table;
  table.header.push_back("respondent_id");
  for (const auto& name : dataset.covariate_names) table.header.push_back(name);
  for (const auto& profile : dataset.respondents) {
    std::vector<std::string> row;
    row.push_back(profile.id);
    for (int c = 0; c < profile.covariates.size(); ++c) {
      row.push_back(format_double(profile.covariates[c]));
    }
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

void write_design_csv(const std::vector<ReferendumTask>& tasks,
                      const AttributeSchema& schema, const std::string& path) {
  CsvTable table;
  table.header = task_header(schema);
  for (const auto& task : tasks) table.rows.push_back(task_fields(task, schema));
  write_csv(path, table);
}

std::vector<ReferendumTask> read_design_csv(const std::string& path,
                                            const AttributeSchema& schema) {
  const CsvTable csv = read_csv(path);
  for (const char* required : {"task_id", "block_id"}) {
    if (csv.column(required) < 0) {
      throw Error(path + ": missing column '" + std::string(required) + "'");
    }
  }
  std::vector<int> attr_cols(schema.attributes().size());
  for (std::size_t a = 0; a < schema.attributes().size(); ++a) {
    attr_cols[a] = csv.column(schema.attributes()[a].name);
    if (attr_cols[a] < 0) {
      throw Error(path + ": missing column '" + schema.attributes()[a].name +
                  "'");
    }
  }
  const int task_col = csv.column("task_id");
  const int block_col = csv.column("block_id");
  std::vector<ReferendumTask> tasks;
  std::set<long> seen;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const std::size_t file_row = r + 2;
    const auto& row = csv.rows[r];
    ReferendumTask task = parse_task_fields(
        schema, row, attr_cols,
        parse_csv_long(row[task_col], path, file_row, "task_id"),
        parse_csv_long(row[block_col], path, file_row, "block_id"), path,
        file_row);
    if (!seen.insert(task.task_id).second) {
      throw Error(path + ":" + std::to_string(file_row) +
                  ": duplicate task_id " + std::to_string(task.task_id));
    }
    tasks.push_back(std::move(task));
  }
  if (tasks.empty()) throw Error(path + ": no tasks");
  return tasks;
}

CodedSchema::CodedSchema(const AttributeSchema& schema) : schema_(&schema) {
  codings_.resize(schema.n_continuous());
  for (int slot = 0; slot < schema.n_continuous(); ++slot) {
    const auto& attr = schema.continuous(slot);
    if (attr.transform == Transform::linear ||
        attr.transform == Transform::quadratic) {
      const int degree = attr.transform == Transform::quadratic ? 2 : 1;
      codings_[slot] = std::make_shared<PolyCoding>(attr.values, degree);
    }
  }
}

int CodedSchema::degrees(int slot) const {
  const auto& coding = codings_.at(slot);
  return coding ? coding->max_degree() : 1;
}

double CodedSchema::coded(int slot, double x, int degree) const {
  const auto& coding = codings_.at(slot);
  if (!coding) {
    if (degree != 1) {
      throw Error("attribute '" + schema_->continuous(slot).name +
                  "': no degree-" + std::to_string(degree) + " code");
    }
    return x / schema_->continuous(slot).scale;
  }
  return coding->code(x, degree);
}

double CodedSchema::coded_derivative(int slot, double x, int degree) const {
  const auto& coding = codings_.at(slot);
  if (!coding) {
    if (degree != 1) {
      throw Error("attribute '" + schema_->continuous(slot).name +
                  "': no degree-" + std::to_string(degree) + " code");
    }
    return 1.0 / schema_->continuous(slot).scale;
  }
  return coding->derivative(x, degree);
}

DesignMatrix build_design_matrix(const Dataset& dataset) {
  const auto& schema = dataset.schema;
  const CodedSchema coded(schema);

  DesignMatrix out;
  struct Column {
    int attr_pos;  // position in schema.attributes()
    int level;     // categorical level, or -1
    int slot;      // continuous slot, or -1
    int degree;    // code degree for continuous
  };
  std::vector<Column> columns;
  int slot = -1;
  for (std::size_t a = 0; a < schema.attributes().size(); ++a) {
    const auto& attr = schema.attributes()[a];
    if (attr.kind == AttributeKind::categorical) {
      const int n = attr.n_levels();
      const int n_cols = attr.transform == Transform::effects_coded ? n - 1 : n;
      for (int l = 0; l < n_cols; ++l) {
        columns.push_back({static_cast<int>(a), l, -1, 0});
        out.column_names.push_back(
            attr.name + "=" + attr.labels[l] +
            (attr.transform == Transform::effects_coded ? ":effect" : ""));
      }
    } else {
      ++slot;
      const int degs = attr.transform == Transform::quadratic ? 2 : 1;
      for (int d = 1; d <= degs; ++d) {
        columns.push_back({static_cast<int>(a), -1, slot, d});
        const char* suffix =
            attr.transform == Transform::none
                ? ":scaled"
                : (d == 1 ? ":linear" : ":quadratic");
        out.column_names.push_back(attr.name + suffix);
      }
    }
  }

  const int n_obs = static_cast<int>(dataset.observations.size());
  out.rows = Eigen::MatrixXd::Zero(n_obs, static_cast<int>(columns.size()));
  for (int r = 0; r < n_obs; ++r) {
    const auto& task = dataset.observations[r].task;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& col = columns[c];
      const auto& attr = schema.attributes()[col.attr_pos];
      if (attr.kind == AttributeKind::categorical) {
        if (attr.transform == Transform::effects_coded) {
          const int n = attr.n_levels();
          if (task.category == col.level) {
            out.rows(r, static_cast<int>(c)) = 1.0;
          } else if (task.category == n - 1) {
            out.rows(r, static_cast<int>(c)) = -1.0;
          }
        } else {
          out.rows(r, static_cast<int>(c)) = task.category == col.level ? 1.0 : 0.0;
        }
      } else {
        out.rows(r, static_cast<int>(c)) =
            coded.coded(col.slot, task.values[col.slot], col.degree);
      }
    }
  }
  return out;
}

Dataset filter_respondents(const Dataset& dataset,
                           const std::vector<bool>& keep) {
  if (keep.size() != dataset.respondents.size()) {
    throw Error("filter_respondents: mask length mismatch");
  }
  Dataset out;
  out.schema = dataset.schema;
  out.covariate_names = dataset.covariate_names;
  for (std::size_t r = 0; r < dataset.respondents.size(); ++r) {
    if (!keep[r]) continue;
    const int new_index = static_cast<int>(out.respondents.size());
    out.respondents.push_back(dataset.respondents[r]);
    const auto [begin, end] = dataset.respondent_obs[r];
    const int out_begin = static_cast<int>(out.observations.size());
    for (int i = begin; i < end; ++i) {
      Observation obs = dataset.observations[i];
      obs.respondent = new_index;
      out.observations.push_back(std::move(obs));
    }
    out.respondent_obs.emplace_back(out_begin,
                                    static_cast<int>(out.observations.size()));
  }
  if (out.respondents.empty()) {
    throw Error("filter_respondents: no respondents left");
  }
  return out;
}

}  // namespace lclogit
