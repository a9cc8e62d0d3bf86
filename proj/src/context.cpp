#include "ordwb/context.hpp"

#include <fstream>

namespace ordwb {

using nlohmann::json;

const AtomDecl &ClassContext::declare(const std::string &name, int level) {
  return atoms_.declare(name, level);
}

int ClassContext::n_max() const {
  int n = 1;
  for (const auto &a : atoms_.atoms())
    n = std::max(n, a.level);
  return n;
}

void ClassContext::annotate_m(const Term &x, const Term &m) {
  if (m < x)
    throw DomainError("m-annotation below its argument: m(" + render(x) + ") = " + render(m));
  std::string key = render(x);
  auto it = m_.find(key);
  if (it != m_.end()) {
    if (it->second.second != m)
      throw DomainError("conflicting m-annotation for " + key + ": " +
                        render(it->second.second) + " vs " + render(m));
    return;
  }
  m_.emplace(key, std::make_pair(x, m));
}

std::optional<Term> ClassContext::annotated_m(const Term &x) const {
  auto it = m_.find(render(x));
  if (it == m_.end())
    return std::nullopt;
  return it->second.second;
}

std::vector<std::pair<Term, Term>> ClassContext::annotations() const {
  std::vector<std::pair<Term, Term>> out;
  for (const auto &kv : m_)
    out.push_back(kv.second);
  return out;
}

json ClassContext::to_json() const {
  json atoms = json::array(), m = json::array();
  for (const auto &a : atoms_.atoms())
    atoms.push_back({{"name", a.name}, {"level", a.level}});
  for (const auto &kv : m_)
    m.push_back({{"x", render(kv.second.first)}, {"m", render(kv.second.second)}});
  return json{{"atoms", atoms}, {"m", m}};
}

ClassContext ClassContext::from_json(const json &j) {
  ClassContext ctx;
  try {
    for (const auto &a : j.value("atoms", json::array()))
      ctx.declare(a.at("name").get<std::string>(), a.at("level").get<int>());
    for (const auto &e : j.value("m", json::array()))
      ctx.annotate_m(ctx.parse(e.at("x").get<std::string>()),
                     ctx.parse(e.at("m").get<std::string>()));
  } catch (const json::exception &ex) {
    throw DomainError(std::string("malformed context: ") + ex.what());
  }
  return ctx;
}

ClassContext load_context(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot read context file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception &ex) {
    throw DomainError("context file " + path + ": " + ex.what());
  }
  return ClassContext::from_json(j);
}

void save_context(const ClassContext &ctx, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    throw DomainError("cannot write context file " + path);
  out << ctx.to_json().dump(2) << "\n";
}

} // namespace ordwb
