// Command-line driver. Talks to the simulation core exclusively through the
// public C API in dwell/dwell.h.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "dwell/dwell.h"

namespace {

int usage(FILE* stream) {
  std::fprintf(stream,
               "usage:\n"
               "  dwell run --config <path> [--out <dir>] [--seed <n>]\n"
               "  dwell validate\n"
               "  dwell version\n");
  return stream == stderr ? 2 : 0;
}

int cmd_run(int argc, char** argv) {
  std::string config_path;
  std::string out_dir = "out";
  long long seed = -1;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config_path = argv[++i];
    } else if (arg == "--out" && i + 1 < argc) {
      out_dir = argv[++i];
    } else if (arg == "--seed" && i + 1 < argc) {
      char* end = nullptr;
      seed = std::strtoll(argv[++i], &end, 10);
      if (!end || *end != '\0' || seed < 0) {
        std::fprintf(stderr, "error: --seed expects a non-negative integer\n");
        return 2;
      }
    } else {
      std::fprintf(stderr, "error: unknown argument '%s'\n", arg.c_str());
      return usage(stderr);
    }
  }
  if (config_path.empty()) {
    std::fprintf(stderr, "error: run requires --config <path>\n");
    return usage(stderr);
  }

  char* summary = nullptr;
  const int rc = dwell_run_config_file(config_path.c_str(), out_dir.c_str(), seed, &summary);
  if (rc != DWELL_OK) {
    std::fprintf(stderr, "error (%d): %s\n", rc, dwell_last_error());
    return 1;
  }
  if (summary) {
    std::fputs(summary, stdout);
    dwell_string_destroy(summary);
  }
  return 0;
}

int cmd_validate() {
  char* report = nullptr;
  const int rc = dwell_validate(&report);
  if (report) {
    std::fputs(report, stdout);
    dwell_string_destroy(report);
  }
  if (rc != DWELL_OK) {
    std::fprintf(stderr, "error (%d): %s\n", rc, dwell_last_error());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage(stderr);
  const std::string command = argv[1];
  if (command == "run") return cmd_run(argc - 2, argv + 2);
  if (command == "validate") return cmd_validate();
  if (command == "version") {
    std::printf("%s\n", dwell_version());
    return 0;
  }
  if (command == "--help" || command == "-h" || command == "help") return usage(stdout);
  std::fprintf(stderr, "error: unknown command '%s'\n", command.c_str());
  return usage(stderr);
}
