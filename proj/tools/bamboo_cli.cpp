#include "bamboo/export.hpp"
#include "bamboo/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace bamboo;

namespace {

// "3", "1-4" or "1,2,5"
std::vector<int> parse_genus_list(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    int lo = 0, hi = 0;
    try {
      if (dash == std::string::npos) {
        lo = hi = std::stoi(part);
      } else {
        lo = std::stoi(part.substr(0, dash));
        hi = std::stoi(part.substr(dash + 1));
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("--genus", "expected N, A-B or a comma list, got '" + spec + "'");
    }
    if (lo < 1 || hi < lo) throw CLI::ValidationError("--genus", "bad range '" + part + "'");
    for (int g = lo; g <= hi; ++g) out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FormalSum named_class(const std::string& name, int g) {
  if (name == "B") return make_B(g);
  if (name == "reflected") return reflect(make_B(g));
  if (name == "onepoint") return make_B_onepoint(g);
  throw CLI::ValidationError("--class", "unknown class " + name);
}

std::string render(const FormalSum& s, const std::string& format) {
  if (format == "admcycles") return export_admcycles(s);
  return to_json(s).dump(2) + "\n";
}

struct VerifyArgs {
  std::string genus = "1-3";
  std::vector<std::string> identities;
  int context_len = 0;
  int max_r = -1;
  int jobs = 1;
  std::string out_dir;
  std::string export_format = "json";
  bool deep = false;
  bool no_direct = false;
  bool quiet = false;
};

int run_verify(const VerifyArgs& a) {
  for (const auto& id : a.identities)
    if (!is_identity_id(id)) throw CLI::ValidationError("--identity", "unknown identity " + id);
  SuiteOptions opt;
  opt.budget.context_len = a.context_len;
  opt.budget.max_r = a.max_r;
  opt.jobs = a.jobs;
  opt.direct_psi_eval = !a.no_direct;
  const std::vector<int> genera = parse_genus_list(a.genus);
  std::vector<IdentityTask> tasks;
  for (int g : genera) {
    if (a.identities.empty()) {
      auto t = tasks_for_genus(g, "", a.deep);
      tasks.insert(tasks.end(), t.begin(), t.end());
    } else {
      for (const auto& id : a.identities) {
        auto t = tasks_for_genus(g, id, a.deep);
        tasks.insert(tasks.end(), t.begin(), t.end());
      }
    }
  }
  std::vector<IdentityReport> reports = run_suite(tasks, opt);
  if (!a.out_dir.empty()) {
    write_suite(a.out_dir, reports, opt.budget);
    fs::create_directories(fs::path(a.out_dir) / "exports");
    const std::string ext = a.export_format == "admcycles" ? ".txt" : ".json";
    for (int g : genera)
      detail::write_text(fs::path(a.out_dir) / "exports" / ("B_g" + std::to_string(g) + ext),
                         render(make_B(g), a.export_format));
  }
  if (!a.quiet) {
    for (const auto& r : reports) {
      std::printf("%-28s %-24s %8.2fs", r.key().c_str(), identity_outcome_name(r.outcome), r.seconds);
      if (!r.note.empty()) std::printf("  %s", r.note.c_str());
      std::printf("\n");
    }
  }
  return suite_exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for the bamboo classes in the tautological ring"};
  app.set_config("--config", "", "TOML or INI file with option defaults; command-line flags win");
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "Print a class as JSON or export text");
  int c_genus = 1;
  std::string c_class = "B", c_format = "json", c_out;
  construct->add_option("--genus", c_genus, "Genus")->required()->check(CLI::Range(1, 64));
  construct->add_option("--class", c_class, "B, reflected or onepoint")
      ->check(CLI::IsMember({"B", "reflected", "onepoint"}));
  construct->add_option("--export-format", c_format, "Output format")->check(CLI::IsMember({"json", "admcycles"}));
  construct->add_option("--out", c_out, "Write to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run the identity suite");
  VerifyArgs va;
  verify->add_option("--genus", va.genus, "Genera: N, A-B or a comma list")->capture_default_str();
  verify->add_option("--identity", va.identities, "Restrict to these identities (repeatable)");
  verify->add_option("--budget-context-len", va.context_len, "Maximum context length, 0 for automatic")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--budget-r", va.max_r, "Maximum relation excess r, negative for 2g");
  verify->add_option("--jobs", va.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out-dir", va.out_dir, "Write report, certificates and exports here");
  verify->add_option("--export-format", va.export_format, "Format of the exported classes")
      ->check(CLI::IsMember({"json", "admcycles"}));
  verify->add_flag("--deep", va.deep, "Also certify the intermediate steps of the inductive proofs");
  verify->add_flag("--no-direct-psi-eval", va.no_direct, "Skip the direct psi evaluation attempt");
  verify->add_flag("--quiet", va.quiet, "No per-task lines");

  auto* cert = app.add_subcommand("certificate", "Certificate files");
  cert->require_subcommand(1);
  auto* cverify = cert->add_subcommand("verify", "Re-verify certificate files by expansion");
  std::vector<std::string> cert_files;
  cverify->add_option("files", cert_files, "Certificate files")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*construct) {
      const std::string text = render(named_class(c_class, c_genus), c_format);
      if (c_out.empty())
        std::cout << text;
      else
        detail::write_text(c_out, text);
      return 0;
    }
    if (*verify) return run_verify(va);
    if (*cverify) {
      bool all = true;
      for (const auto& f : cert_files) {
        std::ifstream in(f);
        Json j;
        CertificateFileCheck c;
        try {
          j = Json::parse(in);
          c = verify_certificate_file(j);
        } catch (const std::exception& e) {
          c = {false, std::string("unreadable: ") + e.what()};
        }
        std::printf("%s: %s\n", f.c_str(), c.message.c_str());
        all = all && c.ok;
      }
      return all ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
