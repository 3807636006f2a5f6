// Copyright 2026 The zsact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Everything goes through the C interface.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zsact/zsact.h"

namespace {

struct Option {
  const char* key;
  const char* help;
};

const Option kOptions[] = {
    {"embeddings", "word embedding file (<vocab> <dim> text format)"},
    {"object_labels", "object label list, one per line"},
    {"action_labels", "action label list, one per line"},
    {"labels", "label list to encode"},
    {"scores", "object score table (TSV)"},
    {"tubes", "tube proposal file (JSON)"},
    {"ground_truth", "ground-truth labels (video<TAB>action)"},
    {"truth_tubes", "ground-truth tube file (JSON)"},
    {"predictions", "predictions, rankings or detections to evaluate"},
    {"model", "PCA + mixture model file"},
    {"affinity", "affinity matrix file"},
    {"output", "output file"},
    {"encoder", "label encoder: awv | fwv"},
    {"k", "mixture components"},
    {"pca_factor", "PCA reduction factor"},
    {"t_z", "objects kept per action"},
    {"t_v", "objects kept per video"},
    {"alpha", "power normalisation exponent"},
    {"normalize_labels", "normalise label encodings (true|false)"},
    {"fwv_blocks", "Fisher blocks: mean | mean+variance"},
    {"seed", "mixture seeding"},
    {"action_sparsity", "apply T_z sparsity (true|false)"},
    {"power_normalize", "power + l2 normalise object scores (true|false)"},
    {"normalize_tubes", "apply the score normalisation to tubes too (true|false)"},
    {"sparsify_before_normalize", "mask video scores before normalising (true|false)"},
    {"nms_overlap", "non-maximum suppression overlap"},
    {"detection_limit", "detections kept per video"},
    {"metric", "evaluation metric: accuracy | map | auc"},
    {"thresholds", "comma-separated overlap thresholds"},
    {"action", "restrict retrieval to one action"},
    {"format", "output format: tsv | json"},
};

std::string flag_name(const char* key) {
  std::string name = "--";
  for (const char* c = key; *c; ++c) name += *c == '_' ? '-' : *c;
  return name;
}

int exit_code(zsact_status status) {
  switch (status) {
    case ZSACT_OK: return 0;
    case ZSACT_ERR_NUMERIC: return 2;
    default: return 1;
  }
}

int report(zsact_status status) {
  if (status != ZSACT_OK) std::fprintf(stderr, "error: %s\n", zsact_last_error());
  return exit_code(status);
}

void print_warning(const char* message, void*) { std::fprintf(stderr, "warning: %s\n", message); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-shot action classification, retrieval and localisation from object scores"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(zsact_version()));

  std::string config_path;
  bool print_config = false;
  std::map<std::string, std::optional<std::string>> values;
  std::vector<CLI::App*> commands;
  const char* const names[] = {"fit-gmm",  "encode",   "translate", "classify",
                               "retrieve", "localize", "eval",      "plot-data"};
  const char* const descriptions[] = {
      "fit the PCA + Gaussian mixture used by FWV",
      "encode a label list",
      "build the object-to-action affinity matrix",
      "classify videos from object scores",
      "rank videos for each action",
      "pick the best (action, tube) pairs per video",
      "compute accuracy, mAP or AUC-vs-overlap",
      "emit AUC-vs-overlap curve points"};
  for (std::size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_flag("--print-config", print_config, "print the effective config and its hash, then exit");
    for (const auto& opt : kOptions) {
      sub->add_option(flag_name(opt.key), values[opt.key], opt.help);
    }
    commands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  zsact_config* raw = nullptr;
  const zsact_status created =
      config_path.empty() ? zsact_config_create(&raw) : zsact_config_load(config_path.c_str(), &raw);
  if (created != ZSACT_OK) return report(created);
  std::unique_ptr<zsact_config, decltype(&zsact_config_free)> config(raw, zsact_config_free);

  for (const auto& [key, value] : values) {
    if (!value) continue;
    if (const auto s = zsact_config_set(config.get(), key.c_str(), value->c_str()); s != ZSACT_OK) {
      return report(s);
    }
  }

  if (print_config) {
    size_t needed = 0;
    zsact_config_dump(config.get(), nullptr, 0, &needed);
    std::string text(needed, '\0');
    if (const auto s = zsact_config_dump(config.get(), text.data(), needed, nullptr); s != ZSACT_OK) {
      return report(s);
    }
    char hash[17];
    if (const auto s = zsact_config_hash(config.get(), hash); s != ZSACT_OK) return report(s);
    std::printf("%s\nconfig=%s\n", text.c_str(), hash);
    return 0;
  }

  for (CLI::App* sub : commands) {
    if (sub->parsed()) {
      return report(zsact_run(sub->get_name().c_str(), config.get(), print_warning, nullptr));
    }
  }
  return 1;
}
