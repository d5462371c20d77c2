#include "lagstab/json_io.hpp"

#include "lagstab/errors.hpp"

namespace lagstab {

Json poly_to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& t : p.terms()) out.push_back(Json::array({t.exponent, t.coeff}));
  return out;
}

namespace {

std::int64_t integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (!is_integer(q) || !q.get_num().fits_slong_p()) throw InvalidArgument("expected an integer, got " + j.dump());
    return q.get_num().get_si();
  }
  throw InvalidArgument("expected an integer, got " + j.dump());
}

}  // namespace

LaurentPoly poly_from_json(const Json& j, PrimeField field) {
  if (!j.is_array()) throw InvalidArgument("polynomial must be a list of [exponent, coefficient] pairs");
  std::vector<std::pair<int, std::int64_t>> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw InvalidArgument("polynomial term must be [exponent, coefficient]");
    const std::int64_t e = integer_from_json(t[0]);
    if (e < INT32_MIN / 2 || e > INT32_MAX / 2) throw InvalidArgument("exponent out of range");
    terms.emplace_back(static_cast<int>(e), integer_from_json(t[1]));
  }
  return LaurentPoly(field, std::move(terms));
}

Json matrix_to_json(const LaurentMatrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(poly_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"p", m.field().characteristic()}, {"d", m.dim()}, {"basis", std::move(rows)}};
}

LaurentMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("d") || !j.contains("basis")) {
    throw InvalidArgument("matrix must be an object with keys p, d, basis");
  }
  const std::int64_t p = integer_from_json(j["p"]);
  const std::int64_t d = integer_from_json(j["d"]);
  if (p < 2 || p > INT32_MAX) throw InvalidArgument("p out of range");
  if (d < 1 || d > 16) throw InvalidArgument("d must be between 1 and 16");
  const PrimeField field(static_cast<std::uint32_t>(p));
  const Json& rows = j["basis"];
  if (!rows.is_array() || static_cast<std::int64_t>(rows.size()) != d) {
    throw InvalidArgument("basis must have d rows");
  }
  LaurentMatrix m(field, static_cast<int>(d));
  for (int r = 0; r < d; ++r) {
    const Json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != d) {
      throw InvalidArgument("basis row " + std::to_string(r) + " must have d entries");
    }
    for (int c = 0; c < d; ++c) m.at(r, c) = poly_from_json(row[static_cast<std::size_t>(c)], field);
  }
  return m;
}

Json lattice_to_json(const Lattice& l) { return matrix_to_json(l.basis()); }

Lattice lattice_from_json(const Json& j) { return lattice_from_matrix(matrix_from_json(j)); }

Json rationals_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(format_rational(q));
  return out;
}

Json subset_to_json(const Subset& s) {
  Json out = Json::array();
  for (int j : s) out.push_back(j + 1);
  return out;
}

Json to_json(const StabilityReport& r) {
  Json failing = Json::array();
  for (const auto& s : r.failing_subsets) failing.push_back(subset_to_json(s));
  return Json{{"stable", r.stable}, {"failing_subsets", std::move(failing)}};
}

Json to_json(const PartitionReport& r) {
  Json counts = Json::object();
  for (const auto& [tag, c] : r.counts) counts[tag.to_string()] = c;
  return Json{{"total", r.total}, {"strata", std::move(counts)}, {"sector_failures", r.sector_failures}};
}

Json to_json(const GitCompareReport& r) {
  return Json{{"checked", r.checked},
              {"stable", r.stable_count},
              {"mismatches", r.mismatches},
              {"semistable_mismatches", r.semistable_mismatches},
              {"closed_form_mismatches", r.closed_form_mismatches},
              {"intersection_identity_holdsed", r.intersection_identity_holdsed},
              {"identity_failures", r.identity_failures},
              {"identity_projection_failures", r.identity_projection_failures},
              {"identity_complement_failures", r.identity_complement_failures}};
}

namespace {

Json optional_poly(const std::optional<std::vector<Rational>>& p) {
  return p ? rationals_to_json(*p) : Json(nullptr);
}

}  // namespace

Json to_json(const CountReport& r) {
  Json counts = Json::array();
  for (const auto& c : r.counts) {
    Json strata = Json::object();
    for (const auto& [tag, k] : c.strata) strata[tag.to_string()] = k;
    counts.push_back(Json{{"p", c.p},
                          {"total", c.total},
                          {"stable", c.stable},
                          {"quotient", c.quotient},
                          {"strata", std::move(strata)}});
  }
  return Json{{"d", r.shell.d},
              {"n", r.shell.n},
              {"xi", rationals_to_json(r.xi)},
              {"counts", std::move(counts)},
              {"total_poly", optional_poly(r.total_poly)},
              {"stable_poly", optional_poly(r.stable_poly)},
              {"quotient_poly", optional_poly(r.quotient_poly)}};
}

Json to_json(const CompareReport& r) {
  return Json{{"counts", to_json(r.counts)},
              {"quotient_poly", rationals_to_json(r.quotient_poly)},
              {"window", r.window},
              {"series", r.series},
              {"window_matches", r.window_matches},
              {"first_divergence", r.first_divergence ? Json(*r.first_divergence) : Json(nullptr)},
              {"bott_agreement_degree", r.bott_agreement_degree ? Json(*r.bott_agreement_degree) : Json(nullptr)}};
}

Json to_json(const GrowthReport& r) {
  return Json{{"nonstable_poly", rationals_to_json(r.nonstable_poly)},
              {"degree", r.degree},
              {"bound", r.bound},
              {"holds", r.holds}};
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json out = Json::array();
  for (const auto& r : results) {
    out.push_back(Json{{"id", r.id},
                       {"title", r.title},
                       {"status", to_string(r.status)},
                       {"detail", r.detail},
                       {"info", r.info}});
  }
  return out;
}

}  // namespace lagstab
