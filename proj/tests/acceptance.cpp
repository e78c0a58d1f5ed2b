// Acceptance run: criteria 1 to 6 from the corpus, criterion 7 by running the
// CLI's `corpus run` twice and comparing the output digests in the manifests.
//
// usage: acceptance PATH_TO_DESKCAT

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <unistd.h>

#include "deskcat/corpus.hpp"
#include "deskcat/io.hpp"

namespace fs = std::filesystem;
using namespace deskcat;

namespace {

struct RunOutcome {
  int exit_code = -1;
  io::Json outputs;
  bool digests_match_files = true;
};

RunOutcome corpus_run(const std::string& cli, const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string command = "\"" + cli + "\" corpus run --out \"" + dir.string() + "\" > \"" +
                              (dir / "stdout.txt").string() + "\" 2>&1";
  RunOutcome r;
  const int status = std::system(command.c_str());
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (!fs::exists(dir / "manifest.json")) return r;
  r.outputs = io::read_json(dir / "manifest.json").at("outputs");
  for (const auto& [name, digest] : r.outputs.items()) {
    if (io::file_sha256(dir / name) != digest.get<std::string>()) r.digests_match_files = false;
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance PATH_TO_DESKCAT\n";
    return 2;
  }
  bool all = true;

  const auto report = corpus::run_corpus(corpus::Options{});
  for (const auto& c : report.criteria) {
    std::cout << "criterion " << c.id << ": " << (c.passed ? "PASS" : "FAIL") << "  " << c.title << ": "
              << c.detail << "\n";
    all = all && c.passed;
  }

  const fs::path base = fs::temp_directory_path() / ("deskcat-acceptance-" + std::to_string(::getpid()));
  const auto first = corpus_run(argv[1], base / "a");
  const auto second = corpus_run(argv[1], base / "b");
  const bool same = !first.outputs.is_null() && first.outputs == second.outputs;
  const bool passed = same && first.exit_code == 0 && second.exit_code == 0 && first.digests_match_files &&
                      second.digests_match_files;
  std::cout << "criterion 7: " << (passed ? "PASS" : "FAIL") << "  determinism: two corpus runs, "
            << first.outputs.size() << " outputs, digests " << (same ? "identical" : "differ")
            << ", exit codes " << first.exit_code << " " << second.exit_code << "\n";
  all = all && passed;
  if (passed) fs::remove_all(base);

  return all ? 0 : 1;
}
