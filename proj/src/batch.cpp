#include "gcf237/batch.hpp"

#ifdef GCF237_HAVE_OPENMP
#include <omp.h>
#endif

#include "gcf237/parse.hpp"
#include "gcf237/result_json.hpp"

namespace gcf237 {

std::vector<std::string> split_args(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      continue;
    }
    if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

ExpandArgs parse_expand_args(const std::vector<std::string>& tokens) {
  ExpandArgs a;
  for (size_t k = 0; k < tokens.size(); ++k) {
    const std::string& t = tokens[k];
    auto need_value = [&]() -> const std::string& {
      if (k + 1 >= tokens.size()) throw ParseError("missing value for " + t);
      return tokens[++k];
    };
    if (t == "--alpha") a.alpha = need_value();
    else if (t == "--beta") a.beta = need_value();
    else if (t == "--z") a.z = need_value();
    else if (t == "--w") a.w = need_value();
    else if (t == "--sign") a.sign = need_value();
    else if (t == "--b0") a.b0 = need_value();
    else if (t == "--max-digits") a.max_digits = std::stol(need_value());
    else if (t == "--precision") a.precision = std::stol(need_value());
    else if (t == "--max-precision") a.max_precision = std::stol(need_value());
    else if (t == "--convergents") a.convergents = std::stol(need_value());
    else if (t == "--reduce-budget") a.reduce_budget = std::stol(need_value());
    else throw ParseError("unknown flag " + t);
  }
  return a;
}

ExpansionSession make_session(const ExpandArgs& args) {
  SessionConfig cfg;
  cfg.max_digits = args.max_digits;
  cfg.numeric.start_prec = args.precision;
  cfg.numeric.max_prec = args.max_precision;
  cfg.reduce.budget = args.reduce_budget;
  if (!args.b0.empty()) cfg.b0_override = parse_word(args.b0);

  OrientedGeodesic geo;
  if (!args.z.empty() || !args.w.empty()) {
    if (args.z.empty() || args.w.empty())
      throw ParseError("--z and --w must be given together");
    ParsedValue zv = parse_expression(args.z);
    ParsedValue wv = parse_expression(args.w);
    if (zv.is_numeric || wv.is_numeric || zv.is_infinity || wv.is_infinity)
      throw ParseError("--z/--w must be exact elements of L");
    if (!zv.exact.is_L() || !wv.exact.is_L())
      throw ParseError("--z/--w must not contain sqrtD");
    QuadraticInput qi{zv.exact.to_L(), wv.exact.to_L(),
                      args.sign == "-" ? -1 : 1};
    geo = from_quadratic(qi);
    if (!args.beta.empty()) {
      FElem D = geo.prov->D;
      ParsedValue bv = parse_expression(args.beta, &D);
      geo.beta = bv.to_boundary_point();
      geo.prov->beta_is_conjugate = false;
    }
  } else if (!args.alpha.empty()) {
    ParsedValue av = parse_expression(args.alpha);
    if (args.beta.empty()) {
      if (!av.is_numeric && !av.is_infinity)
        throw ParseError(
            "with a bare exact --alpha, give quadratic data via --z/--w (the Galois-conjugate "
            "default needs it) ");
      throw ParseError("--beta is required for numeric alpha");
    }
    ParsedValue bv = parse_expression(args.beta);
    geo.alpha = av.to_boundary_point();
    geo.beta = bv.to_boundary_point();
  } else {
    throw ParseError("give either --z/--w or --alpha/--beta");
  }
  return ExpansionSession(std::move(geo), std::move(cfg));
}

nlohmann::json run_expand(const ExpandArgs& args) {
  ExpansionSession s = make_session(args);
  return result_document(s, args.convergents);
}

std::vector<std::string> run_batch(const std::vector<std::string>& lines, int jobs) {
  std::vector<std::string> out(lines.size());
  auto work = [&](size_t k) {
    try {
      nlohmann::json doc = run_expand(parse_expand_args(split_args(lines[k])));
      out[k] = doc.dump();
    } catch (const std::exception& e) {
      nlohmann::json err;
      err["error"] = e.what();
      out[k] = err.dump();
    }
  };
#ifdef GCF237_HAVE_OPENMP
  if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long k = 0; k < long(lines.size()); ++k) work(size_t(k));
    return out;
  }
#endif
  (void)jobs;
  for (size_t k = 0; k < lines.size(); ++k) work(k);
  return out;
}

}  // namespace gcf237
