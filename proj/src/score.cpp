#include "absa/score.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace absa {
namespace {

std::string maybe_trim(std::string_view s, const ScoreOptions& opts) {
  return std::string(opts.trim_whitespace ? trim(s) : s);
}

bool sentiment_equal(const std::string& a, const std::string& b, const ScoreOptions& opts) {
  const auto pa = parse_sentiment_ci(maybe_trim(a, opts));
  const auto pb = parse_sentiment_ci(maybe_trim(b, opts));
  return pa && pb && *pa == *pb;
}

bool fields_equal_except_expression(const Quad& pred, const Quad& gold,
                                    const ScoreOptions& opts) {
  return maybe_trim(pred.target, opts) == maybe_trim(gold.target, opts) &&
         sentiment_equal(pred.sentiment, gold.sentiment, opts) &&
         maybe_trim(pred.aspect_category, opts) == maybe_trim(gold.aspect_category, opts);
}

std::optional<std::pair<std::size_t, std::size_t>> first_interval(std::string_view text,
                                                                  const std::string& s) {
  const std::size_t at = text.find(s);
  if (at == std::string_view::npos) return std::nullopt;
  return std::make_pair(at, at + s.size());
}

bool share_token(const std::string& a, const std::string& b) {
  std::istringstream sa(ascii_lower(a));
  std::vector<std::string> tokens_a;
  for (std::string t; sa >> t;) tokens_a.push_back(t);
  std::istringstream sb(ascii_lower(b));
  for (std::string t; sb >> t;) {
    if (std::find(tokens_a.begin(), tokens_a.end(), t) != tokens_a.end()) return true;
  }
  return false;
}

// Kuhn's augmenting-path maximum bipartite matching; instances are tiny.
class Matcher {
 public:
  Matcher(std::size_t preds, std::size_t golds) : adj_(preds), match_gold_(golds, kFree) {}

  void add_edge(std::size_t pred, std::size_t gold) { adj_[pred].push_back(gold); }

  int solve() {
    int matched = 0;
    for (std::size_t p = 0; p < adj_.size(); ++p) {
      visited_.assign(match_gold_.size(), false);
      if (try_augment(p)) ++matched;
    }
    return matched;
  }

 private:
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

  bool try_augment(std::size_t pred) {
    for (const std::size_t gold : adj_[pred]) {
      if (visited_[gold]) continue;
      visited_[gold] = true;
      if (match_gold_[gold] == kFree || try_augment(match_gold_[gold])) {
        match_gold_[gold] = pred;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_gold_;
  std::vector<bool> visited_;
};

void finalize_group(GroupScore& g) {
  const double p = g.pred_total > 0 ? static_cast<double>(g.tp) / g.pred_total : 0.0;
  const double r = g.gold_total > 0 ? static_cast<double>(g.tp) / g.gold_total : 0.0;
  g.f1 = p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

std::string_view to_string(MatchMode m) {
  return m == MatchMode::strict ? "strict" : "relaxed";
}

bool quad_equal_strict(const Quad& pred, const Quad& gold, const ScoreOptions& opts) {
  return fields_equal_except_expression(pred, gold, opts) &&
         maybe_trim(pred.opinion_expression, opts) ==
             maybe_trim(gold.opinion_expression, opts);
}

bool expressions_overlap(std::string_view pred_expr, std::string_view gold_expr,
                         std::string_view text, const ScoreOptions& opts) {
  const std::string p = maybe_trim(pred_expr, opts);
  const std::string g = maybe_trim(gold_expr, opts);
  if (p == g) return true;
  if (p.empty() || g.empty()) return false;
  const auto ip = first_interval(text, p);
  const auto ig = first_interval(text, g);
  if (ip && ig) {
    return ip->first < ig->second && ig->first < ip->second;
  }
  // fallback when either side cannot be located in the text
  if (p.find(g) != std::string::npos || g.find(p) != std::string::npos) return true;
  return share_token(p, g);
}

bool quads_match(const Quad& pred, const Quad& gold, std::string_view text, MatchMode mode,
                 const ScoreOptions& opts) {
  if (mode == MatchMode::strict) return quad_equal_strict(pred, gold, opts);
  return fields_equal_except_expression(pred, gold, opts) &&
         expressions_overlap(pred.opinion_expression, gold.opinion_expression, text, opts);
}

int match_sample(const std::vector<Quad>& preds, const std::vector<Quad>& golds,
                 std::string_view text, MatchMode mode, const ScoreOptions& opts) {
  if (preds.empty() || golds.empty()) return 0;
  Matcher matcher(preds.size(), golds.size());
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < golds.size(); ++g) {
      if (quads_match(preds[p], golds[g], text, mode, opts)) matcher.add_edge(p, g);
    }
  }
  return matcher.solve();
}

EvalReport evaluate(const std::vector<SamplePredictions>& corpus, MatchMode mode,
                    const ScoreOptions& opts) {
  EvalReport report;
  report.mode = mode;
  for (const SamplePredictions& sp : corpus) {
    const int tp = match_sample(sp.preds, sp.sample.gold, sp.sample.text, mode, opts);
    report.tp += tp;
    report.pred_total += static_cast<std::int64_t>(sp.preds.size());
    report.gold_total += static_cast<std::int64_t>(sp.sample.gold.size());
    for (auto* group : {&report.by_language[sp.sample.language],
                        &report.by_domain[sp.sample.domain]}) {
      group->tp += tp;
      group->pred_total += static_cast<std::int64_t>(sp.preds.size());
      group->gold_total += static_cast<std::int64_t>(sp.sample.gold.size());
    }
  }
  report.precision =
      report.pred_total > 0 ? static_cast<double>(report.tp) / report.pred_total : 0.0;
  report.recall =
      report.gold_total > 0 ? static_cast<double>(report.tp) / report.gold_total : 0.0;
  report.f1 = report.precision + report.recall > 0
                  ? 2.0 * report.precision * report.recall /
                        (report.precision + report.recall)
                  : 0.0;
  for (auto& [_, group] : report.by_language) finalize_group(group);
  for (auto& [_, group] : report.by_domain) finalize_group(group);
  return report;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  const auto group_json = [](const GroupScore& g) {
    nlohmann::ordered_json obj;
    obj["tp"] = g.tp;
    obj["pred"] = g.pred_total;
    obj["gold"] = g.gold_total;
    obj["f1"] = g.f1;
    return obj;
  };
  nlohmann::ordered_json obj;
  obj["mode"] = std::string(to_string(report.mode));
  obj["averaging"] = "micro";
  obj["tp"] = report.tp;
  obj["pred_total"] = report.pred_total;
  obj["gold_total"] = report.gold_total;
  obj["precision"] = report.precision;
  obj["recall"] = report.recall;
  obj["f1"] = report.f1;
  nlohmann::ordered_json langs, domains;
  for (const auto& [lang, group] : report.by_language) langs[lang] = group_json(group);
  for (const auto& [domain, group] : report.by_domain) domains[domain] = group_json(group);
  obj["by_language"] = std::move(langs);
  obj["by_domain"] = std::move(domains);
  return obj;
}

}  // namespace absa
