// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <bit>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "delsumm/baselines.hpp"
#include "delsumm/evaluation.hpp"
#include "delsumm/robustness.hpp"
#include "support/oracles.hpp"

using namespace delsumm;
namespace fs = std::filesystem;

namespace {

using Tokens = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

// every solver output seen anywhere in this run goes through here
std::size_t g_checked = 0;
std::size_t g_violations = 0;

void audit(const IlpProblem& p, const IlpSolution& s) {
  if (s.status == IlpStatus::Infeasible) return;
  ++g_checked;
  g_violations += verify_solution(p, s).size();
}

IlpSolution solve(const IlpProblem& p) {
  auto s = solve_exact(p);
  audit(p, s);
  return s;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome ilp_exactness() {
  const auto start = Clock::now();
  std::mt19937_64 gen(2024);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = oracle::random_problem(gen);
    const auto bf = oracle::brute_force(p);
    const auto s = solve(p);
    if (!bf.feasible) {
      if (s.status != IlpStatus::Infeasible) return fail("trial " + std::to_string(trial) + ": expected infeasible");
      continue;
    }
    ++feasible;
    if (s.status != IlpStatus::Optimal || !close(s.objective, bf.best))
      return fail("trial " + std::to_string(trial) + ": objective " + std::to_string(s.objective) + " vs " +
                  std::to_string(bf.best));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (secs >= 60.0) return fail("took " + std::to_string(secs) + " s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "200 instances (%d feasible) in %.2f s", feasible, secs);
  return {true, buf};
}

Outcome budget_monotonicity() {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = oracle::random_problem(gen);
    double prev = -1e300;
    for (int budget = 10; budget <= 100; budget += 10) {
      p.budget = budget;
      const auto s = solve(p);
      const double v = s.status == IlpStatus::Infeasible ? -1e300 : s.objective;
      if (v < prev - 1e-9)
        return fail("trial " + std::to_string(trial) + " drops at L=" + std::to_string(budget));
      prev = v;
    }
  }
  return {true, "50 instances, L = 10..100"};
}

Outcome scale_invariance() {
  std::mt19937_64 gen(5);
  oracle::InstanceShape shape;
  shape.max_sentences = 10;
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = oracle::random_problem(gen, shape);
    const auto base = oracle::brute_force(p);
    if (!base.feasible) continue;
    ++checked;
    for (double c : {0.5, 3.0, 10.0}) {
      const auto q = oracle::scaled(p, c);
      const auto bf = oracle::brute_force(q);
      if (bf.argmax != base.argmax) return fail("argmax set changed at c=" + std::to_string(c));
      const auto s = solve(q);
      if (!close(s.objective, c * base.best)) return fail("optimum not scaled at c=" + std::to_string(c));
    }
  }
  return {true, std::to_string(checked) + " instances x 3 factors"};
}

Outcome guideline_quotas() {
  const auto corpus = generate_corpus(100, 9);
  const auto refs = index_references(corpus.reference_files);
  const auto profile = india_profile();
  int applicable = 0;
  for (const auto& doc : corpus.documents) {
    SummaryRequest r;
    r.doc = doc;
    r.profile = profile;
    r.references = refs.at(doc.doc_id);
    const int budget = r.resolve_length();
    int must = 0;
    for (const auto& s : doc.sentences)
      if (s.role == RhetoricalRole::Issue || s.role == RhetoricalRole::FinalJudgement) must += s.word_count;
    const auto run = summarize_detailed(r, corpus.lexicons);
    audit(run.problem, run.solution);
    if (must > budget) continue;
    ++applicable;
    for (const auto& s : doc.sentences) {
      if (s.role != RhetoricalRole::Issue && s.role != RhetoricalRole::FinalJudgement) continue;
      const auto& sel = run.summary.selected;
      if (std::find(sel.begin(), sel.end(), s.id) == sel.end())
        return fail(doc.doc_id + " misses sentence " + std::to_string(s.id));
    }
  }
  if (applicable == 0) return fail("no applicable documents");
  return {true, std::to_string(applicable) + " of 100 documents applicable, 0 exceptions"};
}

// Appends a copy of sentence i (same length, value and content words). The copy
// sits outside every quota set and the budget grows by its length.
IlpProblem with_duplicate(const IlpProblem& p, std::size_t i) {
  std::vector<std::vector<std::size_t>> content(p.sentence_count() + 1);
  for (const auto& [s, w] : p.couplings) content[s].push_back(w);
  content.back() = content[i];
  IlpProblem q = p;
  q.sentence_value.push_back(p.sentence_value[i]);
  q.lengths.push_back(p.lengths[i]);
  q.budget = p.budget + p.lengths[i];
  q.set_content(content);
  return q;
}

// Best value over feasible masks that contain all of `required`.
double best_with(const IlpProblem& p, std::uint32_t required) {
  double best = -1e300;
  for (std::uint32_t m = 0; m < (1U << p.sentence_count()); ++m)
    if ((m & required) == required && oracle::feasible_mask(p, m)) best = std::max(best, oracle::mask_value(p, m));
  return best;
}

Outcome redundancy() {
  std::mt19937_64 gen(31);
  oracle::InstanceShape shape;
  shape.max_sentences = 9;
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto p = oracle::random_problem(gen, shape);
    const auto bf = oracle::brute_force(p);
    if (!bf.feasible || bf.argmax.front() == 0) continue;
    const std::uint32_t opt = bf.argmax.front();
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(opt));
    const auto q = with_duplicate(p, i);
    const std::size_t dup = p.sentence_count();
    // optimum with the sentence and its copy both selected
    const double with_both = best_with(q, (1U << i) | (1U << dup));
    if (!close(with_both, bf.best + p.sentence_value[i]))
      return fail("trial " + std::to_string(trial) + ": gain " + std::to_string(with_both - bf.best) + " vs I(i) " +
                  std::to_string(p.sentence_value[i]));
    // content words of the copy are never paid twice
    if (!close(oracle::mask_value(q, opt | (1U << dup)), bf.best + p.sentence_value[i]))
      return fail("trial " + std::to_string(trial) + ": copy's content counted twice");
    const auto s = solve(q);
    if (!close(s.objective, oracle::brute_force(q).best)) return fail("solver disagrees on duplicated instance");
    ++checked;
  }
  return {true, std::to_string(checked) + " instances"};
}

Outcome rouge_fixtures() {
  struct Fixture {
    Tokens cand, ref;
    int n;  // 0 for ROUGE-L
    double r, p, f;
  };
  const std::vector<Fixture> fixtures = {
      {{"a", "b", "c", "d"}, {"a", "b", "c", "d"}, 2, 1, 1, 1},
      {{"a", "b", "c"}, {"a", "b", "d"}, 2, 0.5, 0.5, 0.5},
      {{}, {"a", "b"}, 2, 0, 0, 0},
      {{"a", "a", "a", "a"}, {"a", "a"}, 1, 1.0, 0.5, 2.0 / 3.0},
      {{"a", "b", "a", "b"}, {"a", "b", "c"}, 2, 0.5, 1.0 / 3.0, 0.4},
      {{"x", "y"}, {"p", "q"}, 1, 0, 0, 0},
      {{"p", "q", "r"}, {"p", "q", "r"}, 0, 1, 1, 1},
      {{"a", "x", "b"}, {"a", "b"}, 0, 1.0, 2.0 / 3.0, 0.8},
      {{"p", "q"}, {"r", "s"}, 0, 0, 0, 0},
      {{}, {}, 0, 0, 0, 0},
      {{"a", "b", "c", "d", "e"}, {"a", "c", "e", "f"}, 0, 0.75, 0.6, 2.0 / 3.0},
      {{"b", "a"}, {"a", "b"}, 0, 0.5, 0.5, 0.5},
  };
  for (std::size_t k = 0; k < fixtures.size(); ++k) {
    const auto& fx = fixtures[k];
    const auto s = fx.n == 0 ? rouge_l(fx.cand, fx.ref) : rouge_n(fx.cand, fx.ref, fx.n);
    if (std::abs(s.recall - fx.r) > 1e-12 || std::abs(s.precision - fx.p) > 1e-12 || std::abs(s.f - fx.f) > 1e-12)
      return fail("fixture " + std::to_string(k));
  }
  return {true, std::to_string(fixtures.size()) + " fixtures"};
}

Outcome segmentwise() {
  TextSummary cand{"d",
                   {{RhetoricalRole::Fact, "the accused travelled to Patna"},
                    {RhetoricalRole::Issue, "whether bail can be granted"},
                    {RhetoricalRole::Fact, "he was arrested at night"}}};
  TextSummary ref{"d",
                  {{RhetoricalRole::Fact, "accused arrested at Patna"},
                   {RhetoricalRole::Issue, "whether anticipatory bail is available"},
                   {RhetoricalRole::Fact, "arrest happened at night"}}};
  const std::set<std::string> stop = {"the", "to", "he", "was", "at", "can", "be", "is"};
  const auto seg = evaluate_segmentwise(cand, ref, stop);
  const auto fact = rouge_l(content_tokens("the accused travelled to Patna he was arrested at night", stop),
                            content_tokens("accused arrested at Patna arrest happened at night", stop));
  const auto issue = rouge_l(content_tokens("whether bail can be granted", stop),
                             content_tokens("whether anticipatory bail is available", stop));
  if (seg.size() != 2) return fail("expected 2 buckets");
  for (const auto& [name, want] : {std::pair{"fact", fact}, std::pair{"issue", issue}}) {
    const auto& got = seg.at(name);
    if (got.recall != want.recall || got.precision != want.precision || got.f != want.f)
      return fail(std::string(name) + " differs from filtered score");
  }
  return {true, "fact and issue match filtered texts"};
}

Outcome planted_recovery() {
  const auto lex = default_lexicons();
  const auto profile = india_profile();
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto planted = oracle::planted_document("planted_" + std::to_string(k), 500 + k, lex, profile, 12, 18);
    SummaryRequest r;
    r.doc = planted.doc;
    r.profile = profile;
    r.target_length = planted.budget;
    const auto run = summarize_detailed(r, lex);
    audit(run.problem, run.solution);
    if (run.summary.selected != planted.gold) return fail(planted.doc.doc_id + " differs from gold");
  }
  return {true, "10 of 10 documents"};
}

Outcome robustness() {
  const auto corpus = generate_corpus(10, 41);
  const auto refs = index_references(corpus.reference_files);
  const auto profile = india_profile();
  const auto zero = robustness_report(corpus.documents, refs, profile, corpus.lexicons, {0.0, 7});
  for (const auto& row : zero.rows) {
    const auto& g = row.gold;
    const auto& n = row.noisy;
    if (g.rouge2_recall != n.rouge2_recall || g.rouge2_f != n.rouge2_f || g.rouge_l_recall != n.rouge_l_recall ||
        g.rouge_l_f != n.rouge_l_f)
      return fail(row.doc_id + ": nonzero delta at rate 0");
  }
  RobustnessOptions wide;
  wide.workers = 4;
  const auto a = robustness_report(corpus.documents, refs, profile, corpus.lexicons, {0.15, 7});
  const auto b = robustness_report(corpus.documents, refs, profile, corpus.lexicons, {0.15, 7}, wide);
  if (robustness_json(a) != robustness_json(b) || robustness_table(a) != robustness_table(b))
    return fail("report differs between runs");
  return {true, "zero deltas at rate 0; identical reports at 0.15"};
}

std::string slurp_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += fs::relative(f, dir).string() + "\n" + cli::read_file(f.string()) + "\n";
  return all;
}

struct Workspace {
  fs::path root;
  cli::RunConfig config;
};

Workspace make_workspace(const std::string& name, std::size_t docs) {
  Workspace w;
  w.root = fs::temp_directory_path() / ("delsumm_acceptance_" + name);
  fs::remove_all(w.root);
  cli::RunConfig g;
  g.out = (w.root / "data").string();
  g.documents = docs;
  g.seed = 17;
  std::ostringstream out, err;
  if (cli::cmd_generate(g, out, err) != cli::kExitOk) throw std::runtime_error("generate failed: " + err.str());
  w.config.corpus = (w.root / "data/corpus.jsonl").string();
  w.config.references = {(w.root / "data/references_1.jsonl").string(), (w.root / "data/references_2.jsonl").string()};
  w.config.lexicons_dir = (w.root / "data/lexicons").string();
  return w;
}

Outcome baseline_budgets() {
  std::mt19937_64 gen(123);
  const auto lex = default_lexicons();
  for (int k = 0; k < 100; ++k) {
    const auto doc = generate_document("b" + std::to_string(k), gen);
    const int budget = 1 + static_cast<int>(draw_index(gen, 250));
    for (auto kind : {BaselineKind::Luhn, BaselineKind::LexRank, BaselineKind::LetSumProportions}) {
      const auto s = baseline_summarize(kind, doc, budget, lex.stopwords);
      if (s.word_count > budget) return fail(std::string(baseline_name(kind)) + " over budget on " + doc.doc_id);
    }
  }
  auto w = make_workspace("compare", 5);
  std::ostringstream out, err;
  if (cli::cmd_compare(w.config, out, err) != cli::kExitOk) return fail("compare failed: " + err.str());
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  fs::remove_all(w.root);
  // title, header, rule, four methods
  if (rows.size() < 7) return fail("compare report too short");
  std::istringstream header(rows[1]);
  std::vector<std::string> cols{std::istream_iterator<std::string>(header), {}};
  if (cols != std::vector<std::string>{"method", "R2-R", "R2-F", "RL-R", "RL-F"}) return fail("header: " + rows[1]);
  for (std::size_t k = 0; k < 4; ++k) {
    std::istringstream row(rows[3 + k]);
    std::vector<std::string> cells{std::istream_iterator<std::string>(row), {}};
    if (cells.size() != 5) return fail("row: " + rows[3 + k]);
  }
  return {true, "100 documents x 3 baselines; 4-method x 4-metric table"};
}

Outcome determinism() {
  auto w = make_workspace("determinism", 6);
  std::string first_sum, first_cmp;
  for (int run = 0; run < 2; ++run) {
    auto c = w.config;
    c.workers = run == 0 ? 1 : 4;
    c.out = (w.root / ("sum" + std::to_string(run))).string();
    std::ostringstream out, err;
    if (cli::cmd_summarize(c, out, err) != cli::kExitOk) return fail("summarize failed: " + err.str());
    const std::string sum = out.str() + slurp_dir(c.out);
    c.out = (w.root / ("cmp" + std::to_string(run))).string();
    std::ostringstream cout_, cerr_;
    if (cli::cmd_compare(c, cout_, cerr_) != cli::kExitOk) return fail("compare failed: " + cerr_.str());
    const std::string cmp = cout_.str() + slurp_dir(c.out);
    if (run == 0) {
      first_sum = sum;
      first_cmp = cmp;
    } else {
      if (sum != first_sum) return fail("summarize output differs");
      if (cmp != first_cmp) return fail("compare output differs");
    }
  }
  fs::remove_all(w.root);
  return {true, "summarize and compare byte-identical across runs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  // feasibility runs last so it sees every solver output of the other checks
  const std::vector<Criterion> criteria = {
      {"ilp-exactness", ilp_exactness},
      {"budget-monotonicity", budget_monotonicity},
      {"scale-invariance", scale_invariance},
      {"issue-and-judgement-quotas", guideline_quotas},
      {"redundancy", redundancy},
      {"rouge-fixtures", rouge_fixtures},
      {"segmentwise-rouge", segmentwise},
      {"planted-optimum-recovery", planted_recovery},
      {"robustness-harness", robustness},
      {"baseline-budgets-and-compare-table", baseline_budgets},
      {"determinism", determinism},
      {"feasibility",
       [] {
         if (g_violations > 0) return fail(std::to_string(g_violations) + " violations");
         return Outcome{true, std::to_string(g_checked) + " solver outputs verified"};
       }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    failed += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
