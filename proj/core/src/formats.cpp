#include "ppn/formats.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ppn/error.hpp"

namespace ppn {

namespace {

using json = nlohmann::ordered_json;

constexpr int kIndent = 2;

std::string dump(const json& j) { return j.dump(kIndent) + "\n"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw Error(Errc::ParseError, std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::ParseError, std::string("missing key \"") + key + "\"");
  return *it;
}

Int as_int(const json& j) {
  if (!j.is_string()) throw Error(Errc::ParseError, "integers must be decimal strings: " + j.dump());
  try {
    return parse_int(j.get<std::string>());
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

Int get_int(const json& j, const char* key) { return as_int(field(j, key)); }

bool get_bool(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_boolean()) throw Error(Errc::ParseError, std::string("\"") + key + "\" must be a boolean");
  return v.get<bool>();
}

std::uint64_t get_u64(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned()) throw Error(Errc::ParseError, std::string("\"") + key + "\" must be a count");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) throw Error(Errc::ParseError, std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

const json& get_array(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) throw Error(Errc::ParseError, std::string("\"") + key + "\" must be an array");
  return v;
}

json ints(std::span<const Int> values) {
  json a = json::array();
  for (const auto& v : values) a.push_back(to_string(v));
  return a;
}

std::vector<Int> parse_ints(const json& a) {
  if (!a.is_array()) throw Error(Errc::ParseError, "expected an array of integers");
  std::vector<Int> out;
  for (const auto& v : a) out.push_back(as_int(v));
  return out;
}

std::vector<std::uint32_t> parse_small(const json& a) {
  if (!a.is_array()) throw Error(Errc::ParseError, "expected an array of residues");
  std::vector<std::uint32_t> out;
  for (const auto& v : a) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > UINT32_MAX)
      throw Error(Errc::ParseError, "residues must be small nonnegative integers");
    out.push_back(v.get<std::uint32_t>());
  }
  return out;
}

std::uint32_t get_u32(const json& j, const char* key) {
  const auto v = get_u64(j, key);
  if (v > UINT32_MAX) throw Error(Errc::ParseError, std::string("\"") + key + "\" out of range");
  return static_cast<std::uint32_t>(v);
}

json port_json(const Port& p) { return json{{"R", to_string(p.R())}, {"c", to_string(p.c())}}; }

Port parse_port(const json& j) {
  try {
    return Port(get_int(j, "R"), get_int(j, "c"));
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, e.what());
  }
}

PrimeFactorization parse_factorization(const json& a) {
  try {
    return PrimeFactorization::from_primes(parse_ints(a));
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    throw Error(Errc::ParseError, e.what());
  }
}

json factorization_json(const PrimeFactorization& f) { return ints(f.primes()); }

// -- Pocklington ------------------------------------------------------------

json cert_json(const PocklingtonCertificate& c) {
  json j;
  j["p"] = to_string(c.p);
  j["base"] = to_string(c.base);
  json factors = json::array();
  for (const auto& pp : c.p_minus_1_factors) factors.push_back({to_string(pp.prime), std::to_string(pp.exponent)});
  j["p_minus_1_factors"] = std::move(factors);
  json children = json::array();
  for (const auto& child : c.children) children.push_back(cert_json(child));
  j["children"] = std::move(children);
  j["leaf"] = c.leaf;
  if (c.probable) j["probable"] = true;
  return j;
}

PocklingtonCertificate parse_cert(const json& j) {
  PocklingtonCertificate c;
  c.p = get_int(j, "p");
  c.base = get_int(j, "base");
  for (const auto& row : get_array(j, "p_minus_1_factors")) {
    if (!row.is_array() || row.size() != 2) throw Error(Errc::ParseError, "factor rows are [prime, exponent]");
    const Int e = as_int(row[1]);
    if (e < 1 || !e.fits_uint_p()) throw Error(Errc::ParseError, "bad exponent " + to_string(e));
    c.p_minus_1_factors.push_back({as_int(row[0]), static_cast<unsigned>(e.get_ui())});
  }
  for (const auto& child : get_array(j, "children")) c.children.push_back(parse_cert(child));
  c.leaf = get_bool(j, "leaf");
  if (j.contains("probable")) c.probable = get_bool(j, "probable");
  return c;
}

json report_json(const CertReport& r) {
  json j;
  j["p"] = to_string(r.p);
  j["verdict"] = std::string(verdict_name(r.verdict));
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["fermat"] = r.fermat_holds;
  json rows = json::array();
  for (const auto& g : r.gcd_rows) rows.push_back({{"q", to_string(g.q)}, {"gcd", to_string(g.gcd)}});
  j["gcd_rows"] = std::move(rows);
  json children = json::array();
  for (const auto& c : r.children) children.push_back(report_json(c));
  j["children"] = std::move(children);
  return j;
}

// -- Exclusion certificates ---------------------------------------------------

json exclusion_json(const SieveExclusionCertificate& c) {
  json j;
  j["port"] = port_json(c.base_port);
  j["prefix"] = ints(c.prefix);
  j["induced_port"] = port_json(c.problem.port);
  j["m"] = to_string(c.problem.m);
  j["P0"] = to_string(c.problem.P0);
  j["S0"] = to_string(c.problem.S0);
  j["U"] = to_string(c.problem.U);
  j["T"] = to_string(c.problem.T);
  json moduli = json::array();
  for (const auto& m : c.moduli)
    moduli.push_back({{"l", m.l}, {"qr_set", m.qr_set}, {"allowed_classes", m.allowed}});
  j["moduli"] = std::move(moduli);
  j["verdict"] = c.excluded ? "excluded" : "not-excluded";
  if (c.witness) {
    const auto& w = *c.witness;
    j["witness"] = {{"t", to_string(w.t)}, {"D", to_string(w.D)}, {"l", w.l}, {"residue", w.residue}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

SieveExclusionCertificate parse_exclusion(const json& j) {
  const Port base = parse_port(field(j, "port"));
  const Port induced = parse_port(field(j, "induced_port"));
  DiscriminantProblem problem{induced,
                              get_int(j, "m"),
                              get_int(j, "P0"),
                              get_int(j, "S0"),
                              get_int(j, "U"),
                              get_int(j, "T")};
  SieveExclusionCertificate c{base, parse_ints(get_array(j, "prefix")), std::move(problem), {}, true, {}};
  for (const auto& m : get_array(j, "moduli"))
    c.moduli.push_back({get_u32(m, "l"), parse_small(field(m, "qr_set")), parse_small(field(m, "allowed_classes"))});
  const std::string verdict = get_string(j, "verdict");
  if (verdict == "excluded") c.excluded = true;
  else if (verdict == "not-excluded") c.excluded = false;
  else throw Error(Errc::ParseError, "unknown verdict \"" + verdict + "\"");
  const auto& w = field(j, "witness");
  if (!w.is_null())
    c.witness = ExclusionWitness{get_int(w, "t"), get_int(w, "D"), get_u32(w, "l"), get_u32(w, "residue")};
  return c;
}

// -- Snapshots ----------------------------------------------------------------

json snapshot_json(const SearchSnapshot& s) {
  json j;
  j["port"] = {{"R", to_string(s.R)}, {"c", to_string(s.c)}};
  j["k"] = s.k;
  j["floor_prime"] = to_string(s.floor_prime);
  j["t_cap"] = to_string(s.t_cap);
  json branches = json::array();
  for (const auto& b : s.branches) {
    json r;
    r["q1"] = to_string(b.q1);
    r["last_completed_prefix"] = ints(b.last_completed_prefix);
    r["prefixes_seen"] = b.prefixes_seen;
    r["t_checked"] = b.t_checked;
    r["square_hits"] = b.square_hits;
    r["empty_T"] = b.empty_T;
    r["bounded_T"] = b.bounded_T;
    r["over_cap"] = b.over_cap;
    r["sieve_excluded"] = b.sieve_excluded;
    json fillings = json::array();
    for (const auto& h : b.fillings)
      fillings.push_back({{"prefix", ints(h.prefix)},
                          {"t", to_string(h.hit.t)},
                          {"u", to_string(h.hit.u)},
                          {"v", to_string(h.hit.v)}});
    r["fillings"] = std::move(fillings);
    r["complete"] = b.complete;
    branches.push_back(std::move(r));
  }
  j["branches"] = std::move(branches);
  return j;
}

SearchSnapshot parse_snapshot_json(const json& j) {
  SearchSnapshot s;
  const auto& port = field(j, "port");
  s.R = get_int(port, "R");
  s.c = get_int(port, "c");
  s.k = get_u64(j, "k");
  s.floor_prime = get_int(j, "floor_prime");
  s.t_cap = get_int(j, "t_cap");
  for (const auto& r : get_array(j, "branches")) {
    BranchRecord b;
    b.q1 = get_int(r, "q1");
    b.last_completed_prefix = parse_ints(field(r, "last_completed_prefix"));
    b.prefixes_seen = get_u64(r, "prefixes_seen");
    b.t_checked = get_u64(r, "t_checked");
    b.square_hits = get_u64(r, "square_hits");
    b.empty_T = get_u64(r, "empty_T");
    b.bounded_T = get_u64(r, "bounded_T");
    b.over_cap = get_u64(r, "over_cap");
    b.sieve_excluded = get_u64(r, "sieve_excluded");
    for (const auto& h : get_array(r, "fillings"))
      b.fillings.push_back({parse_ints(field(h, "prefix")), {get_int(h, "t"), get_int(h, "u"), get_int(h, "v")}});
    b.complete = get_bool(r, "complete");
    s.branches.push_back(std::move(b));
  }
  return s;
}

// -- Audits -------------------------------------------------------------------

json audit_json(const AuditReport& a) {
  json j;
  j["port"] = port_json(a.port);
  j["filling"] = factorization_json(a.filling);
  json rows = json::array();
  for (const auto& r : a.rows) rows.push_back({{"divisor", factorization_json(r.divisor)}, {"delta", to_string(r.delta)}});
  j["rows"] = std::move(rows);
  j["verdict"] = a.verdict == AuditVerdict::Primitive ? "primitive" : "inherited";
  j["inherited_from"] = a.inherited_from ? factorization_json(*a.inherited_from) : json(nullptr);
  return j;
}

json general_factorization_json(const GeneralFactorization& f) {
  json j;
  j["n"] = to_string(f.n);
  json factors = json::array();
  for (const auto& pp : f.factors) factors.push_back({to_string(pp.prime), std::to_string(pp.exponent)});
  j["factors"] = std::move(factors);
  j["complete"] = f.complete;
  if (!f.unfactored.empty()) j["unfactored"] = ints(f.unfactored);
  return j;
}

json channel_json(const ChannelReport& ch) {
  json j;
  j["name"] = ch.name;
  j["filling"] = factorization_json(ch.filling);
  j["K"] = to_string(ch.K);
  if (const auto* one = std::get_if<OnePrimeChannel>(&ch.channel)) {
    j["kind"] = "one-prime";
    j["k_plus_1"] = general_factorization_json(one->k_plus_1);
    j["prime"] = one->prime;
  } else if (const auto* two = std::get_if<TwoPrimeChannel>(&ch.channel)) {
    const auto& a = two->analysis;
    j["kind"] = "two-prime";
    j["k_squared_plus_1"] = general_factorization_json(a.square_plus_one);
    json cands = json::array();
    for (const auto& c : a.candidates) {
      json row;
      row["d"] = to_string(c.d);
      row["e"] = to_string(c.e);
      row["p"] = to_string(c.p);
      row["q"] = to_string(c.q);
      row["p_prime"] = c.p_prime;
      row["q_prime"] = c.q_prime;
      row["p_witness"] = c.p_witness ? json(*c.p_witness) : json(nullptr);
      row["q_witness"] = c.q_witness ? json(*c.q_witness) : json(nullptr);
      cands.push_back(std::move(row));
    }
    j["candidates"] = std::move(cands);
    json pairs = json::array();
    for (const auto& p : a.pairs) pairs.push_back({to_string(p.p), to_string(p.q)});
    j["prime_pairs"] = std::move(pairs);
  } else {
    const auto& open = std::get<OpenSubproblem>(ch.channel);
    j["kind"] = "open";
    j["subproblem"] = {{"K", to_string(open.K)}, {"omega", open.omega}};
  }
  return j;
}

// -- Reproduction -------------------------------------------------------------

json reproduction_json(const ReproductionReport& r) {
  json j;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"claim", c.claim},
                      {"inputs", c.inputs},
                      {"expected", c.expected},
                      {"source", c.source},
                      {"computed", c.computed},
                      {"pass", c.pass}});
  j["checks"] = std::move(checks);
  j["summary"] = {{"passed", r.passed()}, {"failed", r.failed()}, {"total", r.checks.size()}};
  return j;
}

template <class F>
auto guarded(std::string_view text, F&& f) {
  const json j = parse_json(text);
  try {
    return f(j);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

}  // namespace

std::string to_json(const PocklingtonCertificate& cert) { return dump(cert_json(cert)); }

PocklingtonCertificate parse_pocklington_certificate(std::string_view text) {
  return guarded(text, [](const json& j) { return parse_cert(j); });
}

std::string to_json(const CertReport& report) { return dump(report_json(report)); }

std::string to_json(const SieveExclusionCertificate& cert) { return dump(exclusion_json(cert)); }

SieveExclusionCertificate parse_exclusion_certificate(std::string_view text) {
  return guarded(text, [](const json& j) { return parse_exclusion(j); });
}

std::string to_json(const SearchSnapshot& snapshot) { return dump(snapshot_json(snapshot)); }

SearchSnapshot parse_snapshot(std::string_view text) {
  return guarded(text, [](const json& j) { return parse_snapshot_json(j); });
}

void write_snapshot_file(const std::filesystem::path& path, const SearchSnapshot& snapshot) {
  auto tmp = path;
  tmp += ".tmp";
  write_text_file(tmp, to_json(snapshot));
  std::filesystem::rename(tmp, path);
}

SearchSnapshot read_snapshot_file(const std::filesystem::path& path) { return parse_snapshot(read_text_file(path)); }

std::string to_json(const AuditReport& report) { return dump(audit_json(report)); }

AuditReport parse_audit_report(std::string_view text) {
  return guarded(text, [](const json& j) {
    AuditReport a{parse_port(field(j, "port")), parse_factorization(field(j, "filling")), {}, {}, {}};
    for (const auto& r : get_array(j, "rows"))
      a.rows.push_back({parse_factorization(field(r, "divisor")), get_int(r, "delta")});
    const std::string verdict = get_string(j, "verdict");
    if (verdict == "primitive") a.verdict = AuditVerdict::Primitive;
    else if (verdict == "inherited") a.verdict = AuditVerdict::Inherited;
    else throw Error(Errc::ParseError, "unknown verdict \"" + verdict + "\"");
    const auto& from = field(j, "inherited_from");
    if (!from.is_null()) a.inherited_from = parse_factorization(from);
    return a;
  });
}

std::string to_json(const ChannelAudit& audit) {
  json j;
  j["port"] = port_json(audit.port);
  j["target_omega"] = audit.target_omega;
  json channels = json::array();
  for (const auto& ch : audit.channels) channels.push_back(channel_json(ch));
  j["channels"] = std::move(channels);
  j["caveat"] = audit.caveat;
  return dump(j);
}

std::string to_json(const ReproductionReport& report) { return dump(reproduction_json(report)); }

ReproductionReport parse_reproduction_report(std::string_view text) {
  return guarded(text, [](const json& j) {
    ReproductionReport r;
    for (const auto& c : get_array(j, "checks"))
      r.checks.push_back({get_string(c, "id"), get_string(c, "claim"), get_string(c, "inputs"),
                          get_string(c, "expected"), get_string(c, "source"), get_string(c, "computed"),
                          get_bool(c, "pass")});
    return r;
  });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(Errc::InvalidArgument, "write failed for " + path.string());
}

}  // namespace ppn
