#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "delsumm/baselines.hpp"
#include "delsumm/evaluation.hpp"
#include "delsumm/parallel.hpp"
#include "delsumm/robustness.hpp"
#include "delsumm/summarizer.hpp"
#include "delsumm/synthetic.hpp"

namespace fs = std::filesystem;

namespace delsumm::cli {

namespace {

struct Inputs {
  std::vector<LabeledDocument> corpus;
  Lexicons lexicons;
  GuidelineProfile profile;
  ReferenceIndex references;
};

std::vector<LabeledDocument> load_corpus_file(const std::string& path) {
  if (path.empty()) throw ConfigError("--corpus is required");
  try {
    return load_corpus(path);
  } catch (const FileUnreadable&) {
    throw;
  } catch (const CorpusError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<TextSummary> load_summary_file(const std::string& path) {
  try {
    return load_summaries(path);
  } catch (const FileUnreadable&) {
    throw;
  } catch (const CorpusError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ReferenceIndex load_references(const std::vector<std::string>& paths) {
  std::vector<std::vector<TextSummary>> files;
  for (const auto& p : paths) files.push_back(load_summary_file(p));
  return index_references(files);
}

Inputs load_inputs(const RunConfig& config, bool need_corpus) {
  Inputs in;
  if (need_corpus) in.corpus = load_corpus_file(config.corpus);
  in.lexicons = config.lexicons_dir.empty() ? default_lexicons() : load_lexicon_dir(config.lexicons_dir);
  in.profile = resolve_profile(config.profile);
  in.references = load_references(config.references);
  return in;
}

SolverOptions solver_options(const RunConfig& config) {
  SolverOptions s;
  s.node_budget = config.node_budget;
  s.time_budget = std::chrono::duration<double>(config.time_budget);
  return s;
}

const std::vector<TextSummary>* references_for(const Inputs& in, const std::string& doc_id) {
  auto it = in.references.find(doc_id);
  if (it == in.references.end() || it->second.empty()) return nullptr;
  return &it->second;
}

// CLI override, then references, then an error.
int resolve_budget(const RunConfig& config, const std::vector<TextSummary>* refs, const std::string& doc_id) {
  if (config.length) {
    if (*config.length < 0) throw ConfigError("--length must be non-negative");
    return *config.length;
  }
  if (refs == nullptr) throw SummarizeError("no reference summaries for '" + doc_id + "' and no --length given");
  return target_length(*refs);
}

const std::vector<TextSummary>& require_references(const Inputs& in, const std::string& doc_id) {
  const auto* refs = references_for(in, doc_id);
  if (refs == nullptr) throw SummarizeError("no reference summaries for '" + doc_id + "'");
  return *refs;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void check_summary(const SummaryRun& run, const Summary& summary) {
  const auto violations = verify_solution(run.problem, run.solution);
  if (!violations.empty())
    throw InvariantViolation(summary.doc_id + ": " + violations.front().message);
}

void check_budget(const Summary& s, int budget, std::string_view method) {
  if (s.word_count > budget)
    throw InvariantViolation(std::string(method) + " exceeded the budget on '" + s.doc_id + "' (" +
                             std::to_string(s.word_count) + " > " + std::to_string(budget) + ")");
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::vector<std::string> metric_cells(const MetricRow& r) {
  return {format_score(r.rouge2_recall), format_score(r.rouge2_f), format_score(r.rouge_l_recall),
          format_score(r.rouge_l_f)};
}

std::vector<std::string> metric_header(const std::string& first) {
  std::vector<std::string> h{first};
  h.insert(h.end(), kMetricColumns.begin(), kMetricColumns.end());
  return h;
}

std::vector<std::string> bucket_order(bool merge) {
  std::vector<std::string> out;
  for (RhetoricalRole r : kAllRoles) {
    auto b = segment_bucket(r, merge);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  }
  return out;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvariantViolation& e) {
    err << "error: invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ProfileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const SummarizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kExitInvariant;
  }
}

// A candidate run: a directory of summary JSON files or one JSONL file.
struct CandidateRun {
  std::string name;
  std::map<std::string, TextSummary> summaries;
};

CandidateRun load_candidate_run(const std::string& path) {
  CandidateRun run;
  run.name = fs::path(path).filename().string();
  if (run.name.empty()) run.name = fs::path(path).parent_path().filename().string();
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      TextSummary s = summary_from_json(read_file(f.string()));
      run.summaries[s.doc_id] = std::move(s);
    }
  } else {
    run.name = fs::path(path).stem().string();
    for (auto& s : load_summary_file(path)) run.summaries[s.doc_id] = std::move(s);
  }
  return run;
}

struct RunScores {
  std::map<std::string, MetricRow> per_doc;
  std::map<std::string, std::map<std::string, RougeScore>> per_doc_segments;
};

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileUnreadable(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) throw ConfigError("failed writing '" + tmp + "'");
  }
  fs::rename(tmp, path);
}

std::string file_stem(const std::string& doc_id) {
  std::string out;
  for (char c : doc_id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

int cmd_summarize(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.out.empty()) throw ConfigError("--out is required");
    const Inputs in = load_inputs(config, true);
    ensure_dir(config.out);

    std::vector<std::string> lines(in.corpus.size());
    parallel_for(in.corpus.size(), config.workers, [&](std::size_t k) {
      const LabeledDocument& doc = in.corpus[k];
      const auto* refs = references_for(in, doc.doc_id);
      SummaryRequest request;
      request.doc = doc;
      request.profile = in.profile;
      request.target_length = resolve_budget(config, refs, doc.doc_id);
      request.solver = solver_options(config);
      const SummaryRun run = summarize_detailed(request, in.lexicons);
      check_summary(run, run.summary);
      check_budget(run.summary, *request.target_length, "summarize");

      const std::string stem = join_path(config.out, file_stem(doc.doc_id));
      write_file_atomic(stem + ".json", summary_to_json(run.summary, doc));
      if (config.dump_lp) {
        std::ostringstream lp;
        write_lp_format(run.problem, lp, doc.doc_id);
        write_file_atomic(stem + ".lp", lp.str());
      }
      std::ostringstream line;
      line << doc.doc_id << "  " << status_name(run.summary.solver_status) << "  words " << run.summary.word_count
           << "/" << *request.target_length << "  sentences " << run.summary.selected.size() << "  objective "
           << fixed(run.summary.objective, 6);
      for (const auto& r : run.summary.relaxations)
        line << "  relaxed " << role_name(r.role) << " " << r.requested << "->" << r.granted;
      lines[k] = line.str();
    });
    for (const auto& l : lines) out << l << '\n';
    return kExitOk;
  });
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.candidates.empty()) throw ConfigError("--candidates is required");
    if (config.references.empty()) throw NoReferences();
    const Inputs in = load_inputs(config, false);
    const bool merge = in.profile.merge_precedent_ratio;

    std::vector<CandidateRun> runs;
    for (const auto& path : config.candidates) {
      runs.push_back(load_candidate_run(path));
      int suffix = 2;
      const std::string base = runs.back().name;
      while (std::count_if(runs.begin(), runs.end(), [&](const CandidateRun& r) { return r.name == runs.back().name; }) > 1)
        runs.back().name = base + "#" + std::to_string(suffix++);
    }

    std::vector<RunScores> scores(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
      for (const auto& [doc_id, summary] : runs[r].summaries) {
        const auto& refs = require_references(in, doc_id);
        const auto report = evaluate_report(summary, refs, in.lexicons.stopwords, merge);
        scores[r].per_doc[doc_id] = metric_row(report.overall);
        scores[r].per_doc_segments[doc_id] = report.per_segment;
      }
    }

    std::ostringstream report;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      std::vector<MetricRow> all;
      for (const auto& [id, row] : scores[r].per_doc) all.push_back(row);
      auto cells = metric_cells(mean_row(all));
      cells.insert(cells.begin(), runs[r].name);
      cells.push_back(std::to_string(all.size()));
      rows.push_back(std::move(cells));
    }
    auto header = metric_header("run");
    header.push_back("docs");
    report << "Overall ROUGE (mean over documents)\n" << format_table(header, rows) << '\n';

    const auto buckets = bucket_order(merge);
    for (const char* which : {"F", "R"}) {
      std::vector<std::vector<std::string>> seg_rows;
      for (std::size_t r = 0; r < runs.size(); ++r) {
        std::vector<std::string> cells{runs[r].name};
        for (const auto& b : buckets) {
          double sum = 0.0;
          std::size_t count = 0;
          for (const auto& [id, segs] : scores[r].per_doc_segments) {
            auto it = segs.find(b);
            if (it == segs.end()) continue;
            sum += which[0] == 'F' ? it->second.f : it->second.recall;
            ++count;
          }
          cells.push_back(count == 0 ? "-" : format_score(sum / static_cast<double>(count)));
        }
        seg_rows.push_back(std::move(cells));
      }
      std::vector<std::string> seg_header{"run"};
      seg_header.insert(seg_header.end(), buckets.begin(), buckets.end());
      report << "Segment-wise ROUGE-L " << which << " (mean over documents with the segment)\n"
             << format_table(seg_header, seg_rows) << '\n';
    }

    if (runs.size() >= 2) {
      std::vector<std::vector<std::string>> test_rows;
      for (std::size_t a = 0; a < runs.size(); ++a) {
        for (std::size_t b = a + 1; b < runs.size(); ++b) {
          std::vector<MetricRow> ra;
          std::vector<MetricRow> rb;
          for (const auto& [id, row] : scores[a].per_doc) {
            auto it = scores[b].per_doc.find(id);
            if (it == scores[b].per_doc.end()) continue;
            ra.push_back(row);
            rb.push_back(it->second);
          }
          std::vector<std::string> cells{runs[a].name + " vs " + runs[b].name};
          for (double MetricRow::*field : {&MetricRow::rouge2_recall, &MetricRow::rouge2_f,
                                           &MetricRow::rouge_l_recall, &MetricRow::rouge_l_f}) {
            std::vector<double> xa;
            std::vector<double> xb;
            for (std::size_t k = 0; k < ra.size(); ++k) {
              xa.push_back(ra[k].*field);
              xb.push_back(rb[k].*field);
            }
            cells.push_back(format_score(paired_t_test(xa, xb).p_value));
          }
          cells.push_back(std::to_string(ra.size()));
          test_rows.push_back(std::move(cells));
        }
      }
      auto t_header = metric_header("pair");
      t_header.push_back("pairs");
      report << "Paired two-sided t-test p-values\n" << format_table(t_header, test_rows) << '\n';
    }

    if (!config.out.empty()) {
      ensure_dir(config.out);
      write_file_atomic(join_path(config.out, "evaluation.txt"), report.str());
    }
    out << report.str();
    return kExitOk;
  });
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(config, true);
    if (config.methods.empty()) throw ConfigError("--methods needs at least one method");
    struct Method {
      std::string label;
      std::optional<BaselineKind> baseline;
    };
    std::vector<Method> methods;
    for (const auto& m : config.methods) {
      if (m == "delsumm") methods.push_back({"DELSumm", std::nullopt});
      else methods.push_back({std::string(baseline_name(parse_baseline(m))), parse_baseline(m)});
    }

    std::vector<std::vector<MetricRow>> rows(methods.size(), std::vector<MetricRow>(in.corpus.size()));
    parallel_for(in.corpus.size(), config.workers, [&](std::size_t k) {
      const LabeledDocument& doc = in.corpus[k];
      const auto& refs = require_references(in, doc.doc_id);
      const int budget = resolve_budget(config, &refs, doc.doc_id);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        Summary s;
        if (methods[m].baseline) {
          s = baseline_summarize(*methods[m].baseline, doc, budget, in.lexicons.stopwords);
        } else {
          SummaryRequest request;
          request.doc = doc;
          request.profile = in.profile;
          request.target_length = budget;
          request.solver = solver_options(config);
          const SummaryRun run = summarize_detailed(request, in.lexicons);
          check_summary(run, run.summary);
          s = run.summary;
        }
        check_budget(s, budget, methods[m].label);
        rows[m][k] = metric_row(evaluate(to_text_summary(s, doc), refs, in.lexicons.stopwords));
      }
    });

    std::vector<std::vector<std::string>> table;
    for (std::size_t m = 0; m < methods.size(); ++m) {
      auto cells = metric_cells(mean_row(rows[m]));
      cells.insert(cells.begin(), methods[m].label);
      table.push_back(std::move(cells));
    }
    std::ostringstream report;
    report << "ROUGE over " << in.corpus.size() << " documents (mean)\n"
           << format_table(metric_header("method"), table);
    if (!config.out.empty()) {
      ensure_dir(config.out);
      write_file_atomic(join_path(config.out, "compare.txt"), report.str());
    }
    out << report.str();
    return kExitOk;
  });
}

int cmd_perturb(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Inputs in = load_inputs(config, true);
    for (const auto& doc : in.corpus) require_references(in, doc.doc_id);
    if (!(config.noise_rate >= 0.0 && config.noise_rate <= 1.0)) throw ConfigError("--noise-rate must lie in [0, 1]");
    NoiseSpec spec;
    spec.rate = config.noise_rate;
    spec.seed = config.seed;
    RobustnessOptions options;
    options.length_override = config.length;
    options.solver = solver_options(config);
    options.workers = config.workers;
    const auto report = robustness_report(in.corpus, in.references, in.profile, in.lexicons, spec, options);

    std::ostringstream text;
    text << "Uniform label flips, rate " << fixed(spec.rate, 4) << ", seed " << spec.seed << "\n"
         << robustness_table(report);
    if (!config.out.empty()) {
      ensure_dir(config.out);
      write_file_atomic(join_path(config.out, "robustness.txt"), text.str());
      write_file_atomic(join_path(config.out, "robustness.json"), robustness_json(report));
    }
    out << text.str();
    return kExitOk;
  });
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.out.empty()) throw ConfigError("--out is required");
    const auto corpus = generate_corpus(config.documents, config.seed);
    ensure_dir(config.out);

    std::ostringstream docs;
    for (const auto& d : corpus.documents) serialize_document(d, docs);
    write_file_atomic(join_path(config.out, "corpus.jsonl"), docs.str());
    for (std::size_t k = 0; k < corpus.reference_files.size(); ++k) {
      std::ostringstream refs;
      for (const auto& s : corpus.reference_files[k]) serialize_summary_text(s, refs);
      write_file_atomic(join_path(config.out, "references_" + std::to_string(k + 1) + ".jsonl"), refs.str());
    }
    const std::string lex_dir = join_path(config.out, "lexicons");
    ensure_dir(lex_dir);
    auto list = [](const std::vector<std::string>& items) {
      std::string s;
      for (const auto& i : items) s += i + "\n";
      return s;
    };
    write_file_atomic(join_path(lex_dir, "keywords.txt"), list(default_legal_keywords()));
    write_file_atomic(join_path(lex_dir, "statutes.txt"), list(default_statute_names()));
    write_file_atomic(join_path(lex_dir, "stopwords.txt"), list(default_stopwords()));
    out << "wrote " << corpus.documents.size() << " documents and " << corpus.reference_files.size()
        << " reference files to " << config.out << '\n';
    return kExitOk;
  });
}

}  // namespace delsumm::cli
