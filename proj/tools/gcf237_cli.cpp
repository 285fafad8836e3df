#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "gcf237/batch.hpp"
#include "gcf237/parse.hpp"
#include "gcf237/render.hpp"
#include "gcf237/result_json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitPrecision = 4;
constexpr int kExitDomain = 5;

long env_max_precision(long fallback) {
  if (const char* v = std::getenv("TRIANGLE_CF_MAX_PRECISION")) {
    char* end = nullptr;
    long p = std::strtol(v, &end, 10);
    if (end && *end == '\0' && p > 0) return p;
  }
  return fallback;
}

int run_guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const gcf237::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const gcf237::BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const gcf237::PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const gcf237::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesic continued fractions for the (2,3,7) triangle group"};
  app.require_subcommand(1);

  gcf237::ExpandArgs ea;
  ea.max_precision = env_max_precision(ea.max_precision);
  bool pretty = false;
  std::string batch_file;
  int jobs = 1;

  auto add_input_flags = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", ea.alpha, "attracting endpoint (expression)");
    cmd->add_option("--beta", ea.beta,
                    "repelling endpoint (default: Galois conjugate via --z/--w)");
    cmd->add_option("--z", ea.z, "quadratic data z (element of L)");
    cmd->add_option("--w", ea.w, "quadratic data w (element of L)");
    cmd->add_option("--sign", ea.sign, "branch of sqrt(D): + or -")
        ->check(CLI::IsMember({"+", "-"}));
    cmd->add_option("--b0", ea.b0, "initial reduction word override, e.g. \"g7^2 g2 g7^-2\"");
    cmd->add_option("--max-digits", ea.max_digits, "digit budget");
    cmd->add_option("--precision", ea.precision, "starting precision for numeric mode (bits)");
    cmd->add_option("--max-precision", ea.max_precision,
                    "numeric refinement ceiling (bits); env TRIANGLE_CF_MAX_PRECISION");
    cmd->add_option("--convergents", ea.convergents, "regularized convergents to report");
    cmd->add_option("--reduce-budget", ea.reduce_budget, "initial reduction step budget");
  };

  CLI::App* cmd_expand = app.add_subcommand("expand", "geodesic continued fraction expansion");
  add_input_flags(cmd_expand);
  cmd_expand->add_flag("--pretty", pretty, "human-readable table instead of JSON");
  cmd_expand->add_option("--batch", batch_file, "file with one expand invocation per line");
  cmd_expand->add_option("--jobs", jobs, "concurrent sessions for --batch");

  CLI::App* cmd_constants =
      app.add_subcommand("constants", "digit constants a_i, b_i, c_i with verification");
  bool constants_pretty = false;
  cmd_constants->add_flag("--pretty", constants_pretty, "human-readable table");

  CLI::App* cmd_render = app.add_subcommand("render", "SVG picture of the tessellation");
  add_input_flags(cmd_render);
  int tiles = 0;
  std::string out_file;
  cmd_render->add_option("--tiles", tiles, "number of translated tiles B_k D");
  cmd_render->add_option("--out", out_file, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  if (cmd_expand->parsed()) {
    return run_guarded([&]() -> int {
      if (!batch_file.empty()) {
        std::ifstream in(batch_file);
        if (!in) throw gcf237::DomainError("cannot open batch file " + batch_file);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line))
          if (!line.empty()) lines.push_back(line);
        for (const auto& doc : gcf237::run_batch(lines, jobs)) std::cout << doc << "\n";
        return kExitOk;
      }
      gcf237::ExpansionSession s = gcf237::make_session(ea);
      nlohmann::json doc = gcf237::result_document(s, ea.convergents);
      if (pretty)
        std::cout << gcf237::pretty_result(doc);
      else
        std::cout << doc.dump(2) << "\n";
      bool ok = s.result().status != gcf237::ExpStatus::BudgetExhausted;
      return ok ? kExitOk : kExitBudget;
    });
  }
  if (cmd_constants->parsed()) {
    return run_guarded([&]() -> int {
      nlohmann::json doc = gcf237::constants_document();
      if (constants_pretty) {
        for (const auto& row : doc["constants"])
          std::cout << "i=" << row["digit"].get<int>() << "\n  a = "
                    << row["a_text"].get<std::string>() << "\n  b = "
                    << row["b_text"].get<std::string>() << "\n  c = "
                    << row["c_text"].get<std::string>() << "\n";
        std::cout << "checks: " << doc["checks"].dump() << "\n";
      } else {
        std::cout << doc.dump(2) << "\n";
      }
      for (auto& [k, v] : doc["checks"].items())
        if (!v.get<bool>()) return kExitError;
      return kExitOk;
    });
  }
  if (cmd_render->parsed()) {
    return run_guarded([&]() -> int {
      gcf237::ExpansionSession s = gcf237::make_session(ea);
      std::ofstream out(out_file);
      if (!out) throw gcf237::DomainError("cannot open output file " + out_file);
      out << gcf237::render_svg(s, tiles);
      return kExitOk;
    });
  }
  return kExitError;
}
