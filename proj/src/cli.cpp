#include "fdga/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdga/charalg.hpp"
#include "fdga/document.hpp"
#include "fdga/supercomm.hpp"
#include "fdga/weakalg.hpp"

#ifndef FDGA_FIXTURES_DIR
#define FDGA_FIXTURES_DIR "fixtures"
#endif

namespace fdga {

using ordered_json = nlohmann::ordered_json;

std::filesystem::path fixtures_dir() {
  if (const char* env = std::getenv("FDGA_FIXTURES_DIR"); env && *env) return env;
  return FDGA_FIXTURES_DIR;
}

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Structure:
    case ErrorKind::Validation:
      return kExitParse;
    case ErrorKind::EmptyInput:
    case ErrorKind::Precondition:
    case ErrorKind::Filtration:
    case ErrorKind::EmptyIdeal:
    case ErrorKind::Certificate:
      return kExitPrecondition;
    case ErrorKind::InternalAssertion:
      return kExitInternal;
  }
  return kExitInternal;
}

std::filesystem::path resolve(const std::string& arg) {
  std::filesystem::path p(arg);
  if (std::filesystem::exists(p)) return p;
  const auto dir = fixtures_dir();
  if (std::filesystem::exists(dir / p)) return dir / p;
  if (std::filesystem::exists(dir / (arg + ".json"))) return dir / (arg + ".json");
  fail(ErrorKind::Parse, "no such file or fixture: " + arg);
}

std::string nu_string(const NuValue& v) { return v ? std::to_string(*v) : "-inf"; }

ordered_json nu_json(const NuValue& v) { return v ? ordered_json(*v) : ordered_json("-inf"); }

ordered_json structured(const Poly& p) {
  return ordered_json{{"pretty", format_poly(p)}, {"terms", ordered_json::parse(poly_to_json(p).dump())}};
}

ordered_json structured(const SCPoly& p) {
  return ordered_json{{"pretty", format_sc_poly(p)}, {"terms", ordered_json::parse(sc_poly_to_json(p).dump())}};
}

std::string_view violation_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Degree: return "degree";
    case Violation::Kind::Filtration: return "filtration";
    case Violation::Kind::DifferentialSquare: return "d^2";
    case Violation::Kind::Parity: return "parity";
  }
  return "?";
}

struct Session {
  std::ostream& out;
  std::ostream& err;
  bool json = false;

  void emit(const ordered_json& j) { out << j.dump(2) << "\n"; }
};

// --- validate ----------------------------------------------------------------------

struct FileVerdict {
  int code = kExitOk;
  ordered_json json;
  std::string text;
};

FileVerdict validate_one(const std::string& arg) {
  FileVerdict v;
  v.json["file"] = arg;
  try {
    const auto doc = load_document(resolve(arg));
    const auto report = doc.kind == AlgebraKind::Free ? validate_dga(doc.free()) : sc_validate(doc.supercommutative());
    v.code = report.ok() ? kExitOk : kExitRefuted;
    v.json["valid"] = report.ok();
    ordered_json list = ordered_json::array();
    v.text = arg + ": " + (report.ok() ? "OK" : "INVALID") + "\n";
    for (const auto& viol : report.violations) {
      list.push_back({{"kind", violation_name(viol.kind)}, {"generator", viol.generator}, {"message", viol.message}});
      v.text += "  " + std::string(violation_name(viol.kind)) + " (" + viol.generator + "): " + viol.message + "\n";
    }
    v.json["violations"] = std::move(list);
  } catch (const Error& e) {
    v.code = exit_code_for(e.kind());
    v.json["error"] = e.what();
    v.text = arg + ": " + e.what() + "\n";
  }
  return v;
}

int cmd_validate(Session& s, const std::vector<std::string>& files, unsigned jobs) {
  std::vector<FileVerdict> verdicts(files.size());
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) verdicts[i] = validate_one(files[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kExitOk;
  for (const auto& v : verdicts) {
    if (v.code != kExitOk && v.code != kExitRefuted)
      code = std::max(code, v.code);
    else if (v.code == kExitRefuted && code == kExitOk)
      code = kExitRefuted;
  }
  if (s.json) {
    ordered_json all = ordered_json::array();
    for (auto& v : verdicts) all.push_back(v.json);
    s.emit(all);
  } else {
    for (const auto& v : verdicts) s.out << v.text;
  }
  return code;
}

// --- single-document commands ------------------------------------------------------------

int cmd_diff(Session& s, const DGADocument& doc, const std::string& expr) {
  ordered_json j;
  std::string in_text;
  std::string out_text;
  if (doc.kind == AlgebraKind::Free) {
    const Poly x = parse_poly(doc.signature(), expr);
    const Poly dx = leibniz_extend(doc.free(), x);
    in_text = format_poly(x);
    out_text = format_poly(dx);
    j = {{"element", structured(x)}, {"differential", structured(dx)}};
  } else {
    const SCPoly x = parse_sc_poly(doc.signature(), expr);
    const SCPoly dx = sc_leibniz(doc.supercommutative(), x);
    in_text = format_sc_poly(x);
    out_text = format_sc_poly(dx);
    j = {{"element", structured(x)}, {"differential", structured(dx)}};
  }
  if (s.json)
    s.emit(j);
  else
    s.out << "d(" << in_text << ") = " << out_text << "\n";
  return kExitOk;
}

int cmd_nu(Session& s, const DGADocument& doc, const std::string& expr) {
  const auto& sig = *doc.signature();
  const auto& df = sig.degree_function();
  const Poly x = parse_poly(doc.signature(), expr);
  if (s.json) {
    ordered_json weights = ordered_json::object();
    for (GenIndex g = 0; g < sig.size(); ++g) weights[sig.generator(g).name] = df.weight(g);
    s.emit({{"scale", df.scale}, {"weights", weights}, {"element", structured(x)}, {"nu", nu_json(nu_of(x))}});
    return kExitOk;
  }
  s.out << "N = " << df.scale << "\nweights:";
  for (GenIndex g = 0; g < sig.size(); ++g) s.out << " " << sig.generator(g).name << "=" << df.weight(g);
  s.out << "\nnu(" << format_poly(x) << ") = " << nu_string(nu_of(x)) << "\n";
  return kExitOk;
}

int cmd_divide(Session& s, const DGADocument& doc, const std::string& expr, const std::vector<std::string>& by) {
  const auto& sig = doc.signature();
  const Poly x = parse_poly(sig, expr);
  std::vector<Poly> members;
  for (const auto& b : by) members.push_back(parse_poly(sig, b));
  const NuFamily family(members);
  const auto d = weak_divide(x, family);
  if (!division_identity_holds(x, family, d)) fail(ErrorKind::InternalAssertion, "division identity violated");
  if (s.json) {
    ordered_json q = ordered_json::array();
    for (std::size_t i = 0; i < family.size(); ++i)
      q.push_back({{"divisor", structured(family[i])}, {"quotient", structured(d.quotients[i])}});
    s.emit({{"element", structured(x)}, {"quotients", q}, {"remainder", structured(d.remainder)}, {"rounds", d.rounds}});
    return kExitOk;
  }
  s.out << format_poly(x) << " =\n";
  for (std::size_t i = 0; i < family.size(); ++i)
    s.out << "  (" << format_poly(d.quotients[i]) << ") * (" << format_poly(family[i]) << ")\n";
  s.out << "  + " << format_poly(d.remainder) << "\n";
  s.out << "remainder nu = " << nu_string(nu_of(d.remainder)) << ", rounds = " << d.rounds << "\n";
  return kExitOk;
}

int cmd_basis(Session& s, const DGADocument& doc, const std::vector<std::string>& specs) {
  const auto& dga = doc.free();
  std::vector<BoundaryPair> pairs;
  for (const auto& spec : specs) {
    const auto colon = spec.find(':');
    Poly y = parse_poly(doc.signature(), spec.substr(0, colon));
    Poly g = colon == std::string::npos ? leibniz_extend(dga, y) : parse_poly(doc.signature(), spec.substr(colon + 1));
    pairs.push_back({std::move(y), std::move(g)});
  }
  const auto cr = boundary_basis(dga, pairs);
  std::string why;
  const bool ok = completion_invariants_hold(dga, cr, pairs, &why);
  if (s.json) {
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < cr.pairs.size(); ++i)
      list.push_back({{"preimage", structured(cr.pairs[i].preimage)},
                      {"boundary", structured(cr.pairs[i].boundary)},
                      {"basis", structured(cr.basis[i])},
                      {"nu", nu_json(nu_of(cr.basis[i]))}});
    ordered_json rel = ordered_json::array();
    for (const auto& c : cr.cycle_relations) rel.push_back(structured(c));
    s.emit({{"pairs", list},
            {"max_input_nu", cr.max_input_nu},
            {"cycle_relations", rel},
            {"peel_steps", cr.peel_steps},
            {"rebuilds", cr.rebuilds},
            {"invariants", ok ? "OK" : why}});
  } else {
    for (std::size_t i = 0; i < cr.pairs.size(); ++i)
      s.out << "y" << i + 1 << " = " << format_poly(cr.pairs[i].preimage) << "\n  d(y" << i + 1
            << ") = " << format_poly(cr.pairs[i].boundary) << "\n  basis " << i + 1 << ": " << format_poly(cr.basis[i])
            << " (nu " << nu_string(nu_of(cr.basis[i])) << ")\n";
    for (const auto& c : cr.cycle_relations) s.out << "cycle relation: " << format_poly(c) << "\n";
    s.out << "peel steps = " << cr.peel_steps << ", rebuilds = " << cr.rebuilds << "\n";
    s.out << "invariants: " << (ok ? "OK" : why) << "\n";
  }
  return ok ? kExitOk : kExitInternal;
}

void print_certificate(Session& s, const std::vector<CertificateTriple>& triples) {
  for (const auto& [u, v, w] : triples)
    s.out << "  (" << format_poly(u) << ") d(" << format_poly(v) << ") (" << format_poly(w) << ")\n";
}

ordered_json certificate_json(const std::vector<CertificateTriple>& triples) {
  ordered_json list = ordered_json::array();
  for (const auto& [u, v, w] : triples) list.push_back({structured(u), structured(v), structured(w)});
  return list;
}

int unknown_at_cap(Session& s, const char* tag, std::uint64_t cap) {
  if (s.json)
    s.emit({{"status", tag}, {"cap", cap}});
  else
    s.out << tag << " " << cap << "\n";
  return kExitUnknownAtCap;
}

int cmd_member(Session& s, const DGADocument& doc, const std::string& expr, std::uint64_t cap) {
  const Poly x = parse_poly(doc.signature(), expr);
  const auto cert = two_sided_member_bounded(doc.free(), x, cap);
  if (!cert) return unknown_at_cap(s, "UNKNOWN_AT_CAP", cap);
  if (s.json) {
    s.emit({{"status", "MEMBER"}, {"element", structured(x)}, {"triples", certificate_json(cert->triples())}});
  } else {
    s.out << format_poly(x) << " = sum of\n";
    print_certificate(s, cert->triples());
  }
  return kExitOk;
}

int report_witness(Session& s, const BoundaryWitness& w) {
  if (s.json) {
    s.emit({{"status", "BOUNDARY"}, {"y", structured(w.y)}, {"x", structured(w.x)}, {"verified", true}});
  } else {
    s.out << "y = " << format_poly(w.y) << "\n";
    s.out << "d(y) = " << format_poly(w.x) << ": verified\n";
  }
  return kExitOk;
}

int cmd_witness(Session& s, const DGADocument& doc, const std::string& expr, const std::string& cert_file) {
  const auto& dga = doc.free();
  const Poly x = parse_poly(doc.signature(), expr);
  const TwoSidedCertificate cert(dga, x, parse_certificate(doc.signature(), read_text_file(resolve(cert_file))));
  return report_witness(s, boundary_witness(dga, x, cert));
}

int cmd_acyclic(Session& s, const DGADocument& doc, std::uint64_t cap) {
  const auto w = is_acyclic_bounded(doc.free(), cap);
  if (!w) return unknown_at_cap(s, "UNKNOWN_AT_CAP", cap);
  return report_witness(s, *w);
}

int cmd_oracle(Session& s, const DGADocument& doc, const std::string& expr, std::uint64_t cap) {
  if (doc.kind == AlgebraKind::Supercommutative) {
    const SCPoly x = parse_sc_poly(doc.signature(), expr);
    const auto y = sc_is_boundary_bruteforce(doc.supercommutative(), x, cap);
    if (!y) return unknown_at_cap(s, "NONE_AT_CAP", cap);
    if (s.json)
      s.emit({{"status", "BOUNDARY"}, {"y", structured(*y)}, {"x", structured(x)}});
    else
      s.out << "y = " << format_sc_poly(*y) << "\nd(y) = " << format_sc_poly(x) << ": verified\n";
    return kExitOk;
  }
  const Poly x = parse_poly(doc.signature(), expr);
  const auto tc = truncated_complex(doc.free(), cap);
  const auto y = is_boundary_bruteforce(tc, x);
  if (!y) return unknown_at_cap(s, "NONE_AT_CAP", cap);
  return report_witness(s, BoundaryWitness(doc.free(), *y, x));
}

int cmd_sc_check(Session& s, const DGADocument& doc, const std::string& pairs_file) {
  const auto& dga = doc.supercommutative();
  const auto report = sc_validate(dga);
  bool all_ok = report.ok();
  ordered_json j;
  std::string text;
  text += std::string("validation: ") + (report.ok() ? "OK" : "FAILED") + "\n";
  j["valid"] = report.ok();

  const auto& sig = *dga.signature();
  const bool has_fixture_names = sig.index_of("b") && sig.index_of("c") && sig.index_of("b1") && sig.index_of("b2");
  if (has_fixture_names) {
    ordered_json table = ordered_json::array();
    for (const auto& line : counterexample_table(dga)) {
      all_ok = all_ok && line.ok;
      table.push_back({{"line", line.label}, {"computed", format_sc_poly(line.computed)}, {"ok", line.ok}});
      text += std::string(line.ok ? "ok   " : "FAIL ") + line.label;
      if (line.label.rfind("d(", 0) == 0) text += " = " + format_sc_poly(line.computed);
      text += "\n";
    }
    j["table"] = std::move(table);

    const SCPoly x = SCPoly::product(dga.signature(), {*sig.index_of("b"), *sig.index_of("c"), *sig.index_of("b2")});
    const bool cycle = sc_leibniz(dga, x).is_zero();
    const auto cert = sc_char_vanishing(dga, x, 1);
    const auto boundary = sc_is_boundary_bruteforce(dga, x, 4);
    const bool counterexample = cycle && cert && !boundary;
    all_ok = all_ok && counterexample;
    text += std::string(cycle ? "ok   " : "FAIL ") + format_sc_poly(x) + " is a cycle\n";
    text += std::string(cert ? "ok   " : "FAIL ") + format_sc_poly(x) + " vanishes in the characteristic algebra\n";
    text += std::string(!boundary ? "ok   " : "FAIL ") + format_sc_poly(x) +
            " is not a boundary (all words of length <= 4 searched)\n";
    j["counterexample"] = {{"element", format_sc_poly(x)},
                           {"cycle", cycle},
                           {"vanishes_in_characteristic_algebra", cert.has_value()},
                           {"boundary_at_length_4", boundary.has_value()}};
  }

  if (!pairs_file.empty()) {
    const TrivialityCertificate cert(dga, parse_triviality_pairs(dga.signature(), read_text_file(resolve(pairs_file))));
    SCPoly w = dga.zero();
    if (sig.field().characteristic() == 2)
      w = acyclicity_witness_char2(dga, cert);
    else
      w = acyclicity_witness_char_ne2(dga, cert).w;
    text += "ok   acyclicity witness w = " + format_sc_poly(w) + ", d(w) = 1\n";
    j["acyclicity_witness"] = structured(w);
  }
  j["ok"] = all_ok;
  if (s.json)
    s.emit(j);
  else
    s.out << text;
  return all_ok ? kExitOk : kExitRefuted;
}

int cmd_fixtures(Session& s, const std::string& action, const std::string& name) {
  const auto dir = fixtures_dir();
  if (action == "list") {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.stem() < b.stem(); });
    ordered_json list = ordered_json::array();
    for (const auto& f : files) {
      std::string description;
      try {
        description = load_document(f).description;
      } catch (const Error&) {
        continue;  // certificates and other auxiliary files
      }
      list.push_back({{"name", f.stem().string()}, {"description", description}});
      if (!s.json) s.out << f.stem().string() << "  " << description << "\n";
    }
    if (s.json) s.emit(list);
    return kExitOk;
  }
  if (action == "show") {
    if (name.empty()) fail(ErrorKind::Parse, "fixtures show needs a name");
    s.out << print_document(load_document(resolve(name)));
    return kExitOk;
  }
  fail(ErrorKind::Parse, "fixtures action must be 'list' or 'show'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semifree DGAs with action filtrations: differentials, weak division, boundary witnesses"};
  app.name("fdga");
  app.require_subcommand(1);
  Session session{out, err};
  app.add_flag("--json", session.json, "Structured JSON output");

  std::string file;
  std::string expr;
  std::vector<std::string> files;
  std::vector<std::string> by;
  std::vector<std::string> pairs;
  std::string cert_file;
  std::string pairs_file;
  std::uint64_t cap = 0;
  unsigned jobs = 1;
  std::string action;
  std::string name;

  auto* validate = app.add_subcommand("validate", "Check degree, filtration and d^2 = 0 on every generator");
  validate->add_option("files", files, "Documents or fixture names")->required();
  validate->add_option("--jobs", jobs, "Files checked concurrently")->check(CLI::PositiveNumber);

  auto* diff = app.add_subcommand("diff", "Apply the differential");
  diff->add_option("file", file)->required();
  diff->add_option("poly", expr)->required();

  auto* nu = app.add_subcommand("nu", "Scale, integer weights and nu of an element");
  nu->add_option("file", file)->required();
  nu->add_option("poly", expr)->required();

  auto* divide = app.add_subcommand("divide", "Weak division by a family");
  divide->add_option("file", file)->required();
  divide->add_option("poly", expr)->required();
  divide->add_option("--by", by, "Divisors")->required();

  auto* basis = app.add_subcommand("basis", "Complete boundaries to a free family of boundaries");
  basis->add_option("file", file)->required();
  basis->add_option("--pairs", pairs, "preimage:boundary, or a preimage alone")->required();

  auto* member = app.add_subcommand("member", "Bounded search for membership in the two-sided boundary ideal");
  member->add_option("file", file)->required();
  member->add_option("poly", expr)->required();
  member->add_option("--cap", cap, "nu bound on the search")->required();

  auto* witness = app.add_subcommand("witness", "Boundary witness of a cycle from a two-sided certificate");
  witness->add_option("file", file)->required();
  witness->add_option("poly", expr)->required();
  witness->add_option("--cert", cert_file, "Certificate document")->required();

  auto* acyclic = app.add_subcommand("acyclic", "Bounded search for y with d(y) = 1");
  acyclic->add_option("file", file)->required();
  acyclic->add_option("--cap", cap, "nu bound on the search")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force boundary check on the truncation");
  oracle->add_option("file", file)->required();
  oracle->add_option("poly", expr)->required();
  oracle->add_option("--cap", cap, "nu bound (word length for super-commutative documents)")->required();

  auto* sc_check = app.add_subcommand("sc-check", "Super-commutative fixture checks");
  sc_check->add_option("file", file)->required();
  sc_check->add_option("--trivial", pairs_file, "Pairs (x, y) with 1 = sum x d(y); prints an acyclicity witness");

  auto* fixtures = app.add_subcommand("fixtures", "List or print the shipped fixtures");
  fixtures->add_option("action", action, "list | show")->required();
  fixtures->add_option("name", name);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*validate) return cmd_validate(session, files, jobs);
    if (*fixtures) return cmd_fixtures(session, action, name);
    const DGADocument doc = load_document(resolve(file));
    if (*diff) return cmd_diff(session, doc, expr);
    if (*nu) return cmd_nu(session, doc, expr);
    if (*divide) return cmd_divide(session, doc, expr, by);
    if (*basis) return cmd_basis(session, doc, pairs);
    if (*member) return cmd_member(session, doc, expr, cap);
    if (*witness) return cmd_witness(session, doc, expr, cert_file);
    if (*acyclic) return cmd_acyclic(session, doc, cap);
    if (*oracle) return cmd_oracle(session, doc, expr, cap);
    if (*sc_check) return cmd_sc_check(session, doc, pairs_file);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitParse;
}

}  // namespace fdga
