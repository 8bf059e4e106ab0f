// Copyright 2026 The nl2milp Authors
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

// Command-line front end. Everything goes through the C interface; this
// file deliberately includes no library internals.
//
// Exit codes: 0 success, 1 operational failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "capi/nl2milp.h"

namespace {

// Owns a string handed out by the library.
struct OwnedString {
  char* text = nullptr;
  ~OwnedString() { nl2milp_string_free(text); }
  std::string str() const { return text == nullptr ? "" : text; }
};

struct OwnedSession {
  nl2milp_session* handle = nullptr;
  ~OwnedSession() { nl2milp_session_close(handle); }
};

struct OwnedInstance {
  nl2milp_instance* handle = nullptr;
  ~OwnedInstance() { nl2milp_instance_free(handle); }
};

struct OwnedModel {
  nl2milp_model* handle = nullptr;
  ~OwnedModel() { nl2milp_model_free(handle); }
};

struct OwnedResult {
  nl2milp_result* handle = nullptr;
  ~OwnedResult() { nl2milp_result_free(handle); }
};

int complain(const std::string& context, nl2milp_status status) {
  std::cerr << "error: " << context << ": " << nl2milp_status_name(status)
            << ": " << nl2milp_last_error() << "\n";
  return 1;
}

int complain_text(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 1;
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

// Accepts "0.8" or "464/574".
double parse_ratio(const std::string& text) {
  const size_t slash = text.find('/');
  if (slash == std::string::npos) return std::stod(text);
  const double numerator = std::stod(text.substr(0, slash));
  const double denominator = std::stod(text.substr(slash + 1));
  return numerator / denominator;
}

struct SynthesizeOptions {
  std::string config;
  std::vector<std::string> instances;
  std::string out_dir;
  std::string format = "json";
};

int run_synthesize(const SynthesizeOptions& options) {
  OwnedSession session;
  nl2milp_status status =
      nl2milp_session_open(options.config.c_str(), &session.handle);
  if (status != 0) return complain("opening " + options.config, status);

  int failures = 0;
  for (const std::string& path : options.instances) {
    OwnedInstance instance;
    status = nl2milp_instance_load(path.c_str(), &instance.handle);
    if (status != 0) return complain("loading " + path, status);

    OwnedResult result;
    status =
        nl2milp_synthesize(session.handle, instance.handle, &result.handle);
    if (status != 0) return complain("synthesizing " + path, status);

    OwnedString id;
    if (nl2milp_instance_id(instance.handle, &id.text) != 0) id.text = nullptr;
    const std::string name = id.str().empty() ? path : id.str();

    if (nl2milp_result_ok(result.handle) == 0) {
      OwnedString json;
      if (nl2milp_result_to_json(result.handle, &json.text) == 0 &&
          !options.out_dir.empty()) {
        const std::string out_path =
            (std::filesystem::path(options.out_dir) / (name + ".json"))
                .string();
        nl2milp_result_save(result.handle, out_path.c_str());
      }
      std::cerr << "error: " << name << ": synthesis failed (details in the "
                << "result trace)\n";
      if (options.out_dir.empty()) std::cout << json.str() << "\n";
      ++failures;
      continue;
    }

    std::string rendered;
    std::string extension = ".json";
    if (options.format == "json") {
      OwnedString json;
      status = nl2milp_result_to_json(result.handle, &json.text);
      if (status != 0) return complain("serializing " + name, status);
      rendered = json.str();
      if (rendered.empty() || rendered.back() != '\n') rendered += "\n";
    } else {
      OwnedModel model;
      status = nl2milp_result_model(result.handle, &model.handle);
      if (status != 0) return complain("extracting model of " + name, status);
      OwnedString text;
      if (options.format == "lp") {
        status = nl2milp_model_emit_lp(model.handle, &text.text);
        extension = ".lp";
      } else {
        status = nl2milp_model_emit_latex(model.handle, &text.text);
        extension = ".tex";
      }
      if (status != 0) return complain("rendering " + name, status);
      rendered = text.str();
    }

    if (options.out_dir.empty()) {
      std::cout << rendered;
    } else {
      const std::string out_path =
          (std::filesystem::path(options.out_dir) / (name + extension))
              .string();
      if (!write_file(out_path, rendered)) {
        return complain_text("cannot write " + out_path);
      }
      std::cerr << "wrote " << out_path << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

struct ClassifyOptions {
  std::string config;
  std::vector<std::string> texts;
  std::string file;
  bool rules = false;
};

int run_classify(const ClassifyOptions& options) {
  std::vector<std::string> texts = options.texts;
  if (!options.file.empty()) {
    std::ifstream in(options.file);
    if (!in) return complain_text("cannot read " + options.file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) texts.push_back(line);
    }
  }
  if (texts.empty()) {
    return complain_text("nothing to classify; pass --text or --file");
  }

  OwnedSession session;
  if (!options.rules) {
    if (options.config.empty()) {
      return complain_text("--config is required unless --rules is given");
    }
    const nl2milp_status status =
        nl2milp_session_open(options.config.c_str(), &session.handle);
    if (status != 0) return complain("opening " + options.config, status);
  }

  int failures = 0;
  for (const std::string& text : texts) {
    int label = -1;
    if (options.rules) {
      OwnedString cue;
      const nl2milp_status status =
          nl2milp_classify_rules(text.c_str(), &label, &cue.text);
      if (status != 0) {
        std::cerr << "error: " << nl2milp_status_name(status) << ": "
                  << nl2milp_last_error() << "\n";
        ++failures;
        continue;
      }
      std::cout << label << "\t" << cue.str() << "\n";
    } else {
      const nl2milp_status status =
          nl2milp_classify(session.handle, text.c_str(), &label);
      if (status != 0) {
        std::cerr << "error: " << nl2milp_status_name(status) << ": "
                  << nl2milp_last_error() << "\n";
        ++failures;
        continue;
      }
      std::cout << label << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

struct EvaluateOptions {
  std::string config;
  std::vector<std::string> instances;
};

int run_evaluate(const EvaluateOptions& options) {
  OwnedSession session;
  nl2milp_status status =
      nl2milp_session_open(options.config.c_str(), &session.handle);
  if (status != 0) return complain("opening " + options.config, status);

  std::vector<const char*> paths;
  paths.reserve(options.instances.size());
  for (const std::string& path : options.instances) {
    paths.push_back(path.c_str());
  }
  OwnedString report;
  status = nl2milp_evaluate(session.handle, paths.data(), paths.size(),
                            &report.text);
  if (status != 0) return complain("evaluating", status);
  std::cout << report.str();
  return 0;
}

struct EmitOptions {
  std::string model_path;
  std::string format;
};

int run_emit(const EmitOptions& options) {
  OwnedModel model;
  nl2milp_status status =
      nl2milp_model_load(options.model_path.c_str(), &model.handle);
  if (status != 0) return complain("loading " + options.model_path, status);

  OwnedString text;
  if (options.format == "lp") {
    status = nl2milp_model_emit_lp(model.handle, &text.text);
  } else if (options.format == "latex") {
    status = nl2milp_model_emit_latex(model.handle, &text.text);
  } else {
    status = nl2milp_model_to_json(model.handle, &text.text);
  }
  if (status != 0) return complain("rendering " + options.model_path, status);
  std::cout << text.str();
  if (options.format == "json") std::cout << "\n";
  return 0;
}

struct ExportOptions {
  std::string dataset;
  std::string prefix;
  std::string ratio = "0.8";
  unsigned long long seed = 1;
};

int run_export(const ExportOptions& options) {
  double ratio = 0.0;
  try {
    ratio = parse_ratio(options.ratio);
  } catch (const std::exception&) {
    return complain_text("cannot parse --ratio value '" + options.ratio +
                         "'");
  }
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    return complain_text("--ratio must be strictly between 0 and 1");
  }
  const nl2milp_status status = nl2milp_export_finetune(
      options.dataset.c_str(), ratio, options.seed, options.prefix.c_str());
  if (status != 0) return complain("exporting " + options.dataset, status);
  std::cerr << "wrote " << options.prefix << "train.jsonl and "
            << options.prefix << "validation.jsonl\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize mixed-integer linear programming models from "
               "natural-language descriptions"};
  app.set_version_flag("--version", nl2milp_version());
  app.require_subcommand(1);
  int exit_code = 0;

  SynthesizeOptions synthesize_options;
  CLI::App* synthesize =
      app.add_subcommand("synthesize", "Run the pipeline over instances");
  synthesize->add_option("--config", synthesize_options.config,
                         "Run configuration file")
      ->required();
  synthesize->add_option("instances", synthesize_options.instances,
                         "Instance JSON files")
      ->required();
  synthesize->add_option("--out-dir", synthesize_options.out_dir,
                         "Write one output file per instance here");
  synthesize->add_option("--format", synthesize_options.format,
                         "Output form: json (full result), lp, or latex")
      ->check(CLI::IsMember({"json", "lp", "latex"}));
  synthesize->callback(
      [&] { exit_code = run_synthesize(synthesize_options); });

  ClassifyOptions classify_options;
  CLI::App* classify =
      app.add_subcommand("classify", "Type paragraphs by backend or rules");
  classify->add_option("--config", classify_options.config,
                       "Run configuration file (unused with --rules)");
  classify->add_option("--text", classify_options.texts,
                       "Paragraph to classify (repeatable)");
  classify->add_option("--file", classify_options.file,
                       "File with one paragraph per line");
  classify->add_flag("--rules", classify_options.rules,
                     "Use the offline cue rules");
  classify->callback([&] { exit_code = run_classify(classify_options); });

  EvaluateOptions evaluate_options;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Synthesize reference-carrying instances and report "
                  "accuracy");
  evaluate->add_option("--config", evaluate_options.config,
                       "Run configuration file")
      ->required();
  evaluate->add_option("instances", evaluate_options.instances,
                       "Instance JSON files with reference models")
      ->required();
  evaluate->callback([&] { exit_code = run_evaluate(evaluate_options); });

  EmitOptions emit_options;
  CLI::App* emit =
      app.add_subcommand("emit", "Render a model file as lp, latex, or json");
  emit->add_option("model", emit_options.model_path, "Model JSON file")
      ->required();
  emit->add_option("--format", emit_options.format, "lp, latex, or json")
      ->required()
      ->check(CLI::IsMember({"lp", "latex", "json"}));
  emit->callback([&] { exit_code = run_emit(emit_options); });

  ExportOptions export_options;
  CLI::App* export_cmd = app.add_subcommand(
      "export-finetune", "Split a labeled dataset and write prompt/completion "
                         "JSONL files");
  export_cmd->add_option("--dataset", export_options.dataset,
                         "Labeled dataset JSON file")
      ->required();
  export_cmd->add_option("--prefix", export_options.prefix,
                         "Output path prefix")
      ->required();
  export_cmd->add_option("--ratio", export_options.ratio,
                         "Training share, a decimal or a fraction like "
                         "464/574");
  export_cmd->add_option("--seed", export_options.seed,
                         "Selection seed for the per-class split");
  export_cmd->callback([&] { exit_code = run_export(export_options); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return exit_code;
}
