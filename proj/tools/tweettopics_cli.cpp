// Command line front end. Talks to the library exclusively through the C
// API, the same surface other language bindings would use.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tweettopics.h"

namespace {

int exit_class(tt_status status) {
  switch (status) {
    case TT_OK: return 0;
    case TT_ERR_CONFIG: return 1;
    case TT_ERR_IO:
    case TT_ERR_DATA:
    case TT_ERR_NOT_FOUND: return 2;
    case TT_ERR_INTERNAL: return 3;
  }
  return 3;
}

int fail_with(tt_status status) {
  std::fprintf(stderr, "error: %s\n", tt_last_error());
  return exit_class(status);
}

struct Options {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
};

// Builds the effective config: file, then --set overrides, then --out.
int make_config(const Options& opts, tt_config** out) {
  tt_config* cfg = nullptr;
  if (!opts.config_path.empty()) {
    const tt_status status = tt_config_load(opts.config_path.c_str(), &cfg);
    if (status != TT_OK) return fail_with(status);
  } else {
    cfg = tt_config_new();
    if (!cfg) {
      std::fprintf(stderr, "error: out of memory\n");
      return 3;
    }
  }
  for (const auto& kv : opts.overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      tt_config_free(cfg);
      return 1;
    }
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    const tt_status status = tt_config_set(cfg, key.c_str(), value.c_str());
    if (status != TT_OK) {
      const int code = fail_with(status);
      tt_config_free(cfg);
      return code;
    }
  }
  if (!opts.out_dir.empty()) {
    const tt_status status = tt_config_set(cfg, "paths.out_dir", opts.out_dir.c_str());
    if (status != TT_OK) {
      const int code = fail_with(status);
      tt_config_free(cfg);
      return code;
    }
  }
  *out = cfg;
  return 0;
}

int run_one(const Options& opts, const std::string& stage) {
  tt_config* cfg = nullptr;
  const int rc = make_config(opts, &cfg);
  if (rc != 0) return rc;
  const tt_status status = tt_run_stage(cfg, stage.c_str());
  int code = 0;
  if (status != TT_OK) {
    code = fail_with(status);
  } else {
    char* out_dir = nullptr;
    tt_config_get(cfg, "paths.out_dir", &out_dir);
    std::printf("%s: ok (%s)\n", stage.c_str(), out_dir ? out_dir : "?");
    tt_string_free(out_dir);
  }
  tt_config_free(cfg);
  return code;
}

int show_config(const Options& opts) {
  tt_config* cfg = nullptr;
  const int rc = make_config(opts, &cfg);
  if (rc != 0) return rc;
  char* dump = tt_config_dump(cfg);
  std::printf("%s\n", dump ? dump : "{}");
  std::printf("config_hash: %llu\n", static_cast<unsigned long long>(tt_config_hash(cfg)));
  tt_string_free(dump);
  tt_config_free(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topic and sentiment pipeline for tweet corpora"};
  app.set_version_flag("--version", tt_version());
  app.require_subcommand(1);

  Options opts;
  app.add_option("-c,--config", opts.config_path, "JSON config file");
  app.add_option("-s,--set", opts.overrides, "override a config field, key=value")
      ->type_name("KEY=VALUE");
  app.add_option("-o,--out", opts.out_dir, "output directory (shorthand for paths.out_dir)");

  std::string chosen;
  char* names = tt_stage_names();
  std::vector<std::string> stages;
  {
    std::string buf = names ? names : "";
    size_t start = 0;
    while (start < buf.size()) {
      size_t end = buf.find('\n', start);
      if (end == std::string::npos) end = buf.size();
      stages.push_back(buf.substr(start, end - start));
      start = end + 1;
    }
  }
  tt_string_free(names);

  for (const auto& stage : stages) {
    auto* sub = app.add_subcommand(stage, "run the " + stage + " stage");
    sub->fallthrough();
    sub->callback([&chosen, stage] { chosen = stage; });
  }
  auto* pipeline = app.add_subcommand("pipeline", "run every stage in order");
  pipeline->fallthrough();
  pipeline->callback([&chosen] { chosen = "pipeline"; });

  auto* config_cmd = app.add_subcommand("config", "print the effective config and its hash");
  config_cmd->fallthrough();
  bool want_help_table = false;
  config_cmd->add_flag("--fields", want_help_table, "list every field, type and default");
  config_cmd->callback([&chosen] { chosen = "config"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (chosen == "config") {
    if (want_help_table) {
      char* help = tt_config_help();
      std::printf("%s", help ? help : "");
      tt_string_free(help);
      return 0;
    }
    return show_config(opts);
  }
  return run_one(opts, chosen);
}
