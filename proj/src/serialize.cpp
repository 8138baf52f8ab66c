#include "bratteli/serialize.hpp"

#include <limits>

namespace bratteli {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::InvalidCertificate, "malformed certificate: " + what);
}

Index index_from_json(const Json& j) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) malformed("index must be positive");
  return j.get<Index>();
}

std::string verdict_name(Verdict v, const char* holds, const char* fails) {
  switch (v) {
    case Verdict::Holds: return holds;
    case Verdict::Fails: return fails;
    case Verdict::Unknown: return "UnknownAtBound";
  }
  return "?";
}

}  // namespace

Json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(IntVector(m.row(i).transpose())));
  return out;
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? BigInt(j.get<std::uint64_t>())
                                                            : BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      malformed("'" + j.get<std::string>() + "' is not an integer");
    }
  }
  malformed("expected an integer");
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a non-empty matrix");
  std::vector<std::vector<BigInt>> rows;
  for (const Json& row : j) {
    if (!row.is_array() || row.empty()) malformed("expected a non-empty row");
    std::vector<BigInt> r;
    for (const Json& v : row) r.push_back(bigint_from_json(v));
    if (!rows.empty() && r.size() != rows[0].size()) malformed("ragged matrix");
    rows.push_back(std::move(r));
  }
  return make_matrix(rows, rows[0].size());
}

Json to_json(const IntertwiningCertificate& c) {
  Json out;
  out["r"] = c.r;
  out["t"] = c.t;
  out["R"] = Json::array();
  for (const IntMatrix& m : c.R) out["R"].push_back(to_json(m));
  out["T"] = Json::array();
  for (const IntMatrix& m : c.T) out["T"].push_back(to_json(m));
  out["closure"] = to_string(c.closure);
  if (c.closure == ClosureKind::Periodic) out["closure_from"] = c.closure_from;
  return out;
}

IntertwiningCertificate certificate_from_json(const Json& j) {
  if (!j.is_object()) malformed("expected an object");
  for (const char* key : {"r", "t", "R", "T", "closure"})
    if (!j.contains(key)) malformed(std::string("missing field '") + key + "'");
  IntertwiningCertificate c;
  for (const char* key : {"r", "t", "R", "T"})
    if (!j[key].is_array()) malformed(std::string("field '") + key + "' must be an array");
  for (const Json& v : j["r"]) c.r.push_back(index_from_json(v));
  for (const Json& v : j["t"]) c.t.push_back(index_from_json(v));
  for (const Json& m : j["R"]) c.R.push_back(matrix_from_json(m));
  for (const Json& m : j["T"]) c.T.push_back(matrix_from_json(m));
  const std::string closure = j["closure"].is_string() ? j["closure"].get<std::string>() : "";
  if (closure == "none") {
    c.closure = ClosureKind::None;
  } else if (closure == "uhf") {
    c.closure = ClosureKind::Uhf;
  } else if (closure == "periodic") {
    c.closure = ClosureKind::Periodic;
    if (!j.contains("closure_from")) malformed("periodic closure needs 'closure_from'");
    c.closure_from = index_from_json(j["closure_from"]);
  } else {
    malformed("unknown closure '" + closure + "'");
  }
  return c;
}

Json to_json(const NonVanishing& n) {
  Json out;
  out["level"] = n.level;
  out["residual"] = to_json(n.residual);
  out["powers"] = n.powers;
  return out;
}

Json to_json(const EquivalenceResult& r) {
  Json out;
  out["verdict"] = verdict_name(r.verdict, "Equivalent", "NotEquivalent");
  out["definition"] = to_string(r.definition);
  out["infinite"] = r.infinite;
  out["identities"] = Json::array();
  for (const IdentityWitness& w : r.identities)
    out["identities"].push_back(Json{{"n", w.n}, {"k", w.k}, {"m", w.m}});
  if (r.definition == EquivalenceDefinition::Interleaving) {
    Json iw;
    iw["n"] = r.interleaving.n_seq;
    iw["m"] = r.interleaving.m_seq;
    if (r.interleaving.closure_from) iw["closure_from"] = *r.interleaving.closure_from;
    out["interleaving"] = iw;
  }
  if (r.obstruction) {
    Json ob;
    ob["n"] = r.obstruction->n;
    ob["k"] = r.obstruction->k;
    ob["proof"] = to_json(r.obstruction->proof);
    out["obstruction"] = ob;
  }
  out["note"] = r.note;
  return out;
}

Json to_json(const IsoResult& r) {
  Json out;
  out["verdict"] = verdict_name(r.verdict, "Found", "NonIsomorphic");
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  if (r.obstruction) out["obstruction"] = Json{{"kind", r.obstruction->kind}, {"detail", r.obstruction->detail}};
  out["note"] = r.note;
  out["nodes"] = r.nodes;
  return out;
}

Json to_json(const K0Decision& d) {
  Json out;
  out["verdict"] = verdict_name(d.verdict, "true", "false");
  if (d.verdict == Verdict::Holds) out["level"] = d.level;
  if (d.certificate) out["certificate"] = to_json(*d.certificate);
  out["note"] = d.note;
  return out;
}

Json to_json(const SupernaturalNumber& s) {
  Json out;
  out["text"] = to_string(s);
  Json finite = Json::object();
  for (const auto& [p, e] : s.finite_part) finite[p.str()] = e;
  out["finite"] = finite;
  Json infinite = Json::array();
  for (const BigInt& p : s.infinite_primes) infinite.push_back(to_json(p));
  out["infinite"] = infinite;
  out["truncated"] = s.truncated;
  return out;
}

}  // namespace bratteli
