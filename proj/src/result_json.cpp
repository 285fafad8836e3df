#include "gcf237/result_json.hpp"

#include <sstream>

#include "gcf237/parse.hpp"

namespace gcf237 {

namespace {

nlohmann::json coeffs_of(const LElem& x) {
  nlohmann::json a = nlohmann::json::array();
  for (int k = 0; k < 6; ++k) a.push_back(rat_str(x[k]));
  return a;
}

nlohmann::json coeffs_of(const FElem& x) {
  nlohmann::json a = nlohmann::json::array();
  for (int k = 0; k < 3; ++k) a.push_back(rat_str(x[k]));
  return a;
}

std::string status_str(ExpStatus s) {
  switch (s) {
    case ExpStatus::Periodic:
      return "periodic";
    case ExpStatus::BudgetExhausted:
      return "budget_exhausted";
    case ExpStatus::NumericStream:
      return "numeric_stream";
  }
  return "?";
}

std::string decimal_of(ExpansionSession& s, const BoundaryPoint& p) {
  if (p.is_infinity()) return "inf";
  long prec = s.config().numeric.start_prec;
  long maxp = std::max<long>(s.config().numeric.max_prec, 256);
  for (;;) {
    IntervalReal I = p.eval(prec);
    if (I.is_finite() && I.width_double() < 1e-16) return I.decimal(17);
    if (prec >= maxp) return I.decimal(17);
    prec *= 2;
  }
}

}  // namespace

nlohmann::json result_document(ExpansionSession& s, long convergent_count) {
  const ExpansionResult& r = s.result();
  nlohmann::json doc;
  doc["b0_word"] = r.b0.word() ? word_str(*r.b0.word()) : "?";
  doc["digits"] = r.digits;
  doc["status"] = status_str(r.status);
  if (r.status == ExpStatus::Periodic) {
    doc["preperiod"] = r.preperiod;
    doc["period"] = r.period;
    nlohmann::json period_digits = nlohmann::json::array();
    for (long t = 0; t < r.period; ++t)
      period_digits.push_back(r.digits[size_t(r.preperiod + t)]);
    doc["period_digits"] = period_digits;
  } else {
    doc["preperiod"] = nullptr;
    doc["period"] = nullptr;
  }
  if (r.gamma0) {
    nlohmann::json unit;
    unit["matrix_z"] = coeffs_of(r.gamma0->z());
    unit["matrix_w"] = coeffs_of(r.gamma0->w());
    if (r.epsilon0 && r.D) {
      unit["rho_alpha"] = {{"a", coeffs_of(r.epsilon0->first)},
                           {"b", coeffs_of(r.epsilon0->second)},
                           {"D", coeffs_of(*r.D)}};
    }
    doc["unit"] = unit;
  } else {
    doc["unit"] = nullptr;
  }
  nlohmann::json convs = nlohmann::json::array();
  long n = std::min<long>(convergent_count, s.digits_computed());
  for (long k = 1; k <= n; ++k) convs.push_back(decimal_of(s, s.convergent_reg(k)));
  doc["convergents"] = convs;
  return doc;
}

nlohmann::json constants_document() {
  const DigitConstants& dc = DigitConstants::get();
  nlohmann::json doc;
  nlohmann::json table = nlohmann::json::array();
  for (int d : {1, 2, 3, -1, -2, -3}) {
    table.push_back({{"digit", d},
                     {"a", coeffs_of(dc.a(d))},
                     {"b", coeffs_of(dc.b(d))},
                     {"c", coeffs_of(dc.c(d))},
                     {"a_text", format(dc.a(d))},
                     {"b_text", format(dc.b(d))},
                     {"c_text", format(dc.c(d))}});
  }
  doc["constants"] = table;

  // verification flags
  bool orbit = true, conj = true, units = true, integral = true;
  for (int d : {1, 2, 3, -1, -2, -3}) {
    GroupElement g7d = g7_pow(d);
    BoundaryPoint a = mobius(g7d, BoundaryPoint::exact_L(LElem()));
    orbit = orbit && a.is_exact() && a.exact_value().is_L() &&
            a.exact_value().to_L() == dc.a(d);
    BoundaryPoint ainf = mobius(digit_matrix(d), BoundaryPoint::infinity());
    orbit = orbit && ainf.is_exact() && ainf.exact_value().to_L() == dc.a(d);
    BoundaryPoint cpt = mobius(digit_matrix(d).inverse(), BoundaryPoint::infinity());
    conj = conj && dc.a(d).conj() == -dc.c(d) && cpt.is_exact() &&
           cpt.exact_value().to_L() == -dc.c(d);
    integral = integral && dc.a(d).is_integral() && dc.c(d).is_integral();
    FElem bq = (Rat(1, 4) * dc.b(d)).to_F();
    units = units && bq.is_integral() && bq.inv().is_integral();
  }
  auto abs_lt = [](const LElem& x, const LElem& y) { return (x * x - y * y).sign() < 0; };
  bool ordering = abs_lt(dc.a(1), dc.a(2)) && abs_lt(dc.a(2), LElem::theta()) &&
                  abs_lt(LElem::theta(), dc.a(3));
  doc["checks"] = {{"a_is_g7_orbit_of_zero", orbit},
                   {"c_is_minus_conj_a", conj},
                   {"a_c_integral", integral},
                   {"b_quarter_is_unit", units},
                   {"ordering_a1_a2_theta_a3", ordering}};
  return doc;
}

std::string pretty_result(const nlohmann::json& doc) {
  std::ostringstream os;
  os << "B0      : " << doc.value("b0_word", std::string("?")) << "\n";
  os << "status  : " << doc.value("status", std::string("?")) << "\n";
  if (doc.contains("digits")) {
    os << "digits  : ";
    bool first = true;
    for (const auto& d : doc["digits"]) {
      if (!first) os << ", ";
      os << d.get<long>();
      first = false;
    }
    os << "\n";
  }
  if (doc.contains("preperiod") && !doc["preperiod"].is_null())
    os << "preperiod/period : " << doc["preperiod"].get<long>() << " / "
       << doc["period"].get<long>() << "\n";
  if (doc.contains("unit") && !doc["unit"].is_null()) {
    os << "unit z  : " << doc["unit"]["matrix_z"].dump() << "\n";
    os << "unit w  : " << doc["unit"]["matrix_w"].dump() << "\n";
    if (doc["unit"].contains("rho_alpha"))
      os << "epsilon : a=" << doc["unit"]["rho_alpha"]["a"].dump()
         << " b=" << doc["unit"]["rho_alpha"]["b"].dump()
         << " D=" << doc["unit"]["rho_alpha"]["D"].dump() << "\n";
  }
  if (doc.contains("convergents")) {
    os << "convergents:\n";
    for (const auto& c : doc["convergents"]) os << "  " << c.get<std::string>() << "\n";
  }
  return os.str();
}

}  // namespace gcf237
