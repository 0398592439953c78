#include "yadf/generate.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace yadf {

GraphInput parse_edge_list(const std::string& text) {
  GraphInput g;
  std::istringstream in(text);
  std::string u, v;
  auto node_index = [&](const std::string& token) {
    std::string name;
    bool digits = !token.empty();
    for (char c : token) digits &= std::isdigit(static_cast<unsigned char>(c)) != 0;
    if (digits)
      name = "s" + token;
    else if (valid_statement_id(token))
      name = token;
    else
      throw std::invalid_argument("graph: bad node token '" + token + "'");
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      if (g.nodes[i] == name) return i;
    g.nodes.push_back(name);
    return g.nodes.size() - 1;
  };
  while (in >> u) {
    if (!(in >> v)) throw std::invalid_argument("graph: dangling node token '" + u + "'");
    std::size_t ui = node_index(u);
    std::size_t vi = node_index(v);
    g.edges.emplace_back(ui, vi);
  }
  return g;
}

namespace {

Formula literal_of(const std::string& name, bool positive) {
  Formula v = Formula::var(name);
  return positive ? v : Formula::neg(std::move(v));
}

// group subformulas: attack /\~, group-attack \/~, support \/, group-support /\,
// xor chain with randomly negated literals
Formula group_formula(std::size_t group, const std::vector<std::string>& members,
                      SplitMix64& rng) {
  if (members.empty()) return rng.bernoulli(0.5) ? Formula::top() : Formula::bot();
  switch (group) {
    case 0: {  // attack: ~s1 /\ ... /\ ~sn
      Formula f = literal_of(members[0], false);
      for (std::size_t i = 1; i < members.size(); ++i)
        f = Formula::conj(std::move(f), literal_of(members[i], false));
      return f;
    }
    case 1: {  // group-attack: ~s1 \/ ... \/ ~sn
      Formula f = literal_of(members[0], false);
      for (std::size_t i = 1; i < members.size(); ++i)
        f = Formula::disj(std::move(f), literal_of(members[i], false));
      return f;
    }
    case 2: {  // support: s1 \/ ... \/ sn
      Formula f = literal_of(members[0], true);
      for (std::size_t i = 1; i < members.size(); ++i)
        f = Formula::disj(std::move(f), literal_of(members[i], true));
      return f;
    }
    case 3: {  // group-support: s1 /\ ... /\ sn
      Formula f = literal_of(members[0], true);
      for (std::size_t i = 1; i < members.size(); ++i)
        f = Formula::conj(std::move(f), literal_of(members[i], true));
      return f;
    }
    default: {  // xor chain, each literal negated with probability 1/2
      Formula f = literal_of(members[0], !rng.bernoulli(0.5));
      for (std::size_t i = 1; i < members.size(); ++i)
        f = Formula::xor_(std::move(f), literal_of(members[i], !rng.bernoulli(0.5)));
      return f;
    }
  }
}

}  // namespace

AdfInstance generate(const GraphInput& graph, const GeneratorOptions& opt) {
  double psum = 0;
  for (double p : opt.group_probs) {
    if (p < 0) throw std::invalid_argument("generator: negative group probability");
    psum += p;
  }
  if (psum < 0.999 || psum > 1.001)
    throw std::invalid_argument("generator: group probabilities must sum to 1");

  SplitMix64 rng(opt.seed);

  // Draw order is part of the reproducibility contract:
  // 1. one orientation decision per input edge, in file order
  std::size_t n = graph.nodes.size();
  std::vector<std::vector<bool>> link(n, std::vector<bool>(n, false));
  for (auto [u, v] : graph.edges) {
    if (opt.directed) {
      link[u][v] = true;
    } else if (u == v) {
      link[u][v] = true;
    } else if (rng.bernoulli(opt.symmetric_link_prob)) {
      link[u][v] = true;
      link[v][u] = true;
    } else if (rng.bernoulli(0.5)) {
      link[u][v] = true;
    } else {
      link[v][u] = true;
    }
  }

  // 2. per statement in declaration order: one group draw per parent (in
  //    declaration order), then per group (attack, group-attack, support,
  //    group-support, xor) its internal draws (empty-group constant or xor
  //    literal signs), then four connective draws for the left-to-right fold
  std::vector<double> probs(opt.group_probs.begin(), opt.group_probs.end());
  std::vector<Formula> conditions;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::vector<std::string>> groups(5);
    for (std::size_t p = 0; p < n; ++p)
      if (link[p][s]) groups[rng.categorical(probs)].push_back(graph.nodes[p]);

    std::vector<Formula> parts;
    for (std::size_t gi = 0; gi < 5; ++gi) parts.push_back(group_formula(gi, groups[gi], rng));
    Formula acc = parts[0];
    for (std::size_t gi = 1; gi < 5; ++gi) {
      acc = rng.bernoulli(0.5) ? Formula::conj(std::move(acc), std::move(parts[gi]))
                               : Formula::disj(std::move(acc), std::move(parts[gi]));
    }
    conditions.push_back(std::move(acc));
  }
  return AdfInstance(graph.nodes, std::move(conditions));
}

}  // namespace yadf
