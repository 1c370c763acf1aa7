#include "spf/client/executor.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>

namespace spf::client {

using fragments::Omega;
using fragments::SelectorSpec;
using rdf::SolutionMapping;
using rdf::StarPattern;

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::spf:
      return "spf";
    case Mode::brtpf:
      return "brtpf";
    case Mode::tpf:
      return "tpf";
  }
  return "?";
}

Mode parse_mode(const std::string& text) {
  if (text == "spf") return Mode::spf;
  if (text == "brtpf") return Mode::brtpf;
  if (text == "tpf") return Mode::tpf;
  throw std::invalid_argument("unknown mode '" + text + "' (expected spf, brtpf or tpf)");
}

const char* to_string(QueryStatus status) {
  switch (status) {
    case QueryStatus::ok:
      return "ok";
    case QueryStatus::timeout:
      return "timeout";
    case QueryStatus::transport_error:
      return "transport_error";
  }
  return "?";
}

std::size_t RequestLog::ntb() const noexcept {
  std::size_t total = 0;
  for (const auto& r : records) total += r.request_bytes + r.response_bytes;
  return total;
}

std::vector<std::size_t> RequestLog::omega_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& r : records) {
    if (!r.probe) out.push_back(r.omega_size);
  }
  return out;
}

double QueryResult::qet_ms() const {
  return std::chrono::duration<double, std::milli>(finished - started).count();
}

double QueryResult::qrt_ms() const {
  if (!first_result) return qet_ms();
  return std::chrono::duration<double, std::milli>(*first_result - started).count();
}

namespace {

SelectorSpec selector_for(Mode mode, const StarPattern& unit, const Omega& omega) {
  if (unit.size() == 1) {
    const auto& tp = unit.patterns().front();
    if (omega.empty()) return SelectorSpec::tp(tp);
    if (mode == Mode::tpf) throw std::logic_error("TPF requests never carry bindings");
    return SelectorSpec::brtp(tp, omega);
  }
  if (mode != Mode::spf) throw std::logic_error("only SPF requests carry star patterns");
  return SelectorSpec::star(unit, omega);
}

class Context {
 public:
  Context(Mode mode, FragmentSource& source, RequestLog& log, const ExecutionOptions& options,
          Clock::time_point deadline)
      : mode_(mode), source_(source), log_(log), options_(options), deadline_(deadline) {}

  server::PagePayload fetch(const StarPattern& unit, const Omega& omega, std::size_t page,
                            bool probe) {
    auto selector = selector_for(mode_, unit, omega);
    auto request = server::encode_request(source_.dataset(), selector, page,
                                          mode_ == Mode::tpf ? server::Method::get
                                                             : server::Method::post);
    RequestRecord record;
    record.kind = selector.kind();
    record.omega_size = omega.size();
    record.page = page;
    record.probe = probe;
    record.started = Clock::now();
    Fetched fetched = source_.fetch(request, deadline_);
    record.finished = Clock::now();
    record.request_bytes = fetched.request_bytes;
    record.response_bytes = fetched.response_bytes;
    if (options_.capture_bodies) record.response_body = std::move(fetched.body);
    log_.records.push_back(std::move(record));
    return std::move(fetched.page);
  }

  // Every page of one selector.
  std::vector<SolutionMapping> fetch_all(const StarPattern& unit, const Omega& omega) {
    std::vector<SolutionMapping> out;
    for (std::size_t page = 1;; ++page) {
      auto payload = fetch(unit, omega, page, false);
      for (auto& g : payload.groups) out.push_back(std::move(g.mapping));
      if (!payload.metadata.has_next) break;
    }
    return out;
  }

  Mode mode() const { return mode_; }
  std::size_t max_omega() const { return options_.max_omega; }

 private:
  Mode mode_;
  FragmentSource& source_;
  RequestLog& log_;
  const ExecutionOptions& options_;
  Clock::time_point deadline_;
};

class Stream {
 public:
  virtual ~Stream() = default;
  virtual bool next(SolutionMapping& out) = 0;
};

// Groups of the outermost unit, following next-page controls.
class PageScan final : public Stream {
 public:
  PageScan(Context& ctx, const PlannedStar& planned)
      : ctx_(ctx), unit_(planned.star), page_(planned.first_page) {}

  bool next(SolutionMapping& out) override {
    while (index_ >= page_.groups.size()) {
      if (!page_.metadata.has_next) return false;
      page_ = ctx_.fetch(unit_, {}, page_.metadata.page + 1, false);
      index_ = 0;
    }
    out = page_.groups[index_++].mapping;
    return true;
  }

 private:
  Context& ctx_;
  StarPattern unit_;
  server::PagePayload page_;
  std::size_t index_ = 0;
};

// Block join shipping projected upstream bindings as Omega. Results per
// distinct projection are remembered, so a projection is requested once.
class BindJoin final : public Stream {
 public:
  BindJoin(Context& ctx, std::unique_ptr<Stream> upstream, StarPattern unit)
      : ctx_(ctx), upstream_(std::move(upstream)), unit_(std::move(unit)),
        unit_vars_(unit_.variables()) {}

  bool next(SolutionMapping& out) override {
    while (output_.empty()) {
      if (!fill()) return false;
    }
    out = std::move(output_.front());
    output_.pop_front();
    return true;
  }

 private:
  bool pull(SolutionMapping& m) {
    if (lookahead_) {
      m = std::move(*lookahead_);
      lookahead_.reset();
      return true;
    }
    if (exhausted_) return false;
    if (!upstream_->next(m)) {
      exhausted_ = true;
      return false;
    }
    if (!shared_) {
      shared_.emplace();
      for (const auto& v : unit_vars_) {
        if (m.binds(v)) shared_->push_back(v);
      }
    }
    return true;
  }

  bool fill() {
    std::vector<SolutionMapping> pending;
    Omega batch;
    std::set<SolutionMapping> in_batch;
    SolutionMapping m;
    while (pull(m)) {
      auto key = m.restricted_to(*shared_);
      if (memo_.contains(key) || in_batch.contains(key)) {
        pending.push_back(std::move(m));
        continue;
      }
      if (batch.size() == ctx_.max_omega()) {
        lookahead_ = std::move(m);
        break;
      }
      in_batch.insert(key);
      batch.push_back(std::move(key));
      pending.push_back(std::move(m));
    }
    if (pending.empty()) return false;

    if (!batch.empty()) {
      for (const auto& key : batch) memo_[key];
      // Nothing shared: one unrestricted request, joined as a product.
      Omega omega = shared_->empty() ? Omega{} : batch;
      for (auto& mu : ctx_.fetch_all(unit_, omega)) {
        memo_[mu.restricted_to(*shared_)].push_back(std::move(mu));
      }
    }
    for (const auto& upstream : pending) {
      for (const auto& mu : memo_.at(upstream.restricted_to(*shared_))) {
        output_.push_back(upstream.merged_with(mu));
      }
    }
    return true;
  }

  Context& ctx_;
  std::unique_ptr<Stream> upstream_;
  StarPattern unit_;
  std::vector<std::string> unit_vars_;
  std::optional<std::vector<std::string>> shared_;
  std::map<SolutionMapping, std::vector<SolutionMapping>> memo_;
  std::optional<SolutionMapping> lookahead_;
  bool exhausted_ = false;
  std::deque<SolutionMapping> output_;
};

// TPF nested loop: one request sequence per upstream binding.
class NestedLoopJoin final : public Stream {
 public:
  NestedLoopJoin(Context& ctx, std::unique_ptr<Stream> upstream, rdf::TriplePattern pattern)
      : ctx_(ctx), upstream_(std::move(upstream)), pattern_(std::move(pattern)) {}

  bool next(SolutionMapping& out) override {
    while (output_.empty()) {
      SolutionMapping m;
      if (!upstream_->next(m)) return false;
      auto bound = rdf::apply_mapping(m, pattern_);
      try {
        rdf::validate(bound);
      } catch (const rdf::InvalidTerm&) {
        continue;  // e.g. a literal substituted into subject position
      }
      for (const auto& mu : ctx_.fetch_all(StarPattern({bound}), {})) {
        output_.push_back(m.merged_with(mu));
      }
    }
    out = std::move(output_.front());
    output_.pop_front();
    return true;
  }

 private:
  Context& ctx_;
  std::unique_ptr<Stream> upstream_;
  rdf::TriplePattern pattern_;
  std::deque<SolutionMapping> output_;
};

bool shares_variable(const StarPattern& unit, const std::set<std::string>& vars) {
  for (const auto& v : unit.variables()) {
    if (vars.contains(v)) return true;
  }
  return false;
}

void run_pipeline(const BGPQuery& query, const QueryPlan& plan, Context& ctx,
                  QueryResult& result, const RowSink& sink) {
  std::unique_ptr<Stream> stream = std::make_unique<PageScan>(ctx, plan.stars.front());
  for (std::size_t i = 1; i < plan.stars.size(); ++i) {
    const auto& unit = plan.stars[i].star;
    if (plan.mode == Mode::tpf) {
      stream = std::make_unique<NestedLoopJoin>(ctx, std::move(stream), unit.patterns().front());
    } else {
      stream = std::make_unique<BindJoin>(ctx, std::move(stream), unit);
    }
  }
  auto vars = query.result_variables();
  std::set<SolutionMapping> seen;
  SolutionMapping m;
  while (stream->next(m)) {
    auto row = m.restricted_to(vars);
    if (query.distinct && !seen.insert(row).second) continue;
    if (!result.first_result) result.first_result = Clock::now();
    if (sink) sink(row);
    result.rows.push_back(std::move(row));
  }
}

QueryResult run(const BGPQuery& query, Mode mode, std::vector<StarPattern> units,
                FragmentSource& source, const ExecutionOptions& options, const RowSink& sink) {
  QueryResult result;
  result.started = Clock::now();
  auto deadline = result.started + options.timeout;
  try {
    auto plan = probe_and_order(std::move(units), mode, source, result.log, options, deadline);
    Context ctx(mode, source, result.log, options, deadline);
    run_pipeline(query, plan, ctx, result, sink);
  } catch (const QueryTimeout& e) {
    result.status = QueryStatus::timeout;
    result.error = e.what();
  } catch (const TransportError& e) {
    result.status = QueryStatus::transport_error;
    result.error = e.what();
  }
  result.finished = Clock::now();
  return result;
}

}  // namespace

server::EncodedRequest build_request(Mode mode, const std::string& dataset,
                                     const StarPattern& unit, const Omega& omega,
                                     std::size_t page) {
  return server::encode_request(dataset, selector_for(mode, unit, omega), page,
                                mode == Mode::tpf ? server::Method::get : server::Method::post);
}

QueryPlan probe_and_order(std::vector<StarPattern> units, Mode mode, FragmentSource& source,
                          RequestLog& log, const ExecutionOptions& options,
                          Clock::time_point deadline) {
  Context ctx(mode, source, log, options, deadline);
  std::vector<PlannedStar> probed;
  for (std::size_t i = 0; i < units.size(); ++i) {
    auto first = ctx.fetch(units[i], {}, 1, true);
    std::size_t cnt = first.metadata.cnt;
    probed.push_back({std::move(units[i]), i, cnt, std::move(first)});
  }

  QueryPlan plan;
  plan.mode = mode;
  std::set<std::string> bound;
  std::vector<bool> used(probed.size(), false);
  for (std::size_t step = 0; step < probed.size(); ++step) {
    std::optional<std::size_t> best;
    std::optional<std::size_t> best_connected;
    for (std::size_t i = 0; i < probed.size(); ++i) {
      if (used[i]) continue;
      auto better = [&](const std::optional<std::size_t>& cur) {
        return !cur || probed[i].cardinality < probed[*cur].cardinality;
      };
      if (better(best)) best = i;
      if (!bound.empty() && shares_variable(probed[i].star, bound) && better(best_connected)) {
        best_connected = i;
      }
    }
    std::size_t pick = best_connected ? *best_connected : *best;
    used[pick] = true;
    for (const auto& v : probed[pick].star.variables()) bound.insert(v);
    plan.stars.push_back(std::move(probed[pick]));
  }
  return plan;
}

std::vector<Omega> project_bindings(std::span<const SolutionMapping> mappings,
                                    const StarPattern& sp, std::size_t max_omega) {
  if (max_omega == 0) throw std::invalid_argument("max_omega must be positive");
  if (mappings.empty()) return {};
  auto star_vars = sp.variables();
  std::set<SolutionMapping> seen;
  Omega distinct;
  for (const auto& m : mappings) {
    auto key = m.restricted_to(star_vars);
    if (seen.insert(key).second) distinct.push_back(std::move(key));
  }
  if (distinct.size() == 1 && distinct.front().empty()) return {Omega{}};
  std::vector<Omega> batches;
  for (std::size_t i = 0; i < distinct.size(); i += max_omega) {
    auto end = std::min(distinct.size(), i + max_omega);
    batches.emplace_back(distinct.begin() + static_cast<std::ptrdiff_t>(i),
                         distinct.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

QueryResult execute(const BGPQuery& query, const QueryPlan& plan, FragmentSource& source,
                    const ExecutionOptions& options, const RowSink& sink) {
  QueryResult result;
  result.started = Clock::now();
  try {
    Context ctx(plan.mode, source, result.log, options, result.started + options.timeout);
    run_pipeline(query, plan, ctx, result, sink);
  } catch (const QueryTimeout& e) {
    result.status = QueryStatus::timeout;
    result.error = e.what();
  } catch (const TransportError& e) {
    result.status = QueryStatus::transport_error;
    result.error = e.what();
  }
  result.finished = Clock::now();
  return result;
}

QueryResult execute_spf(const BGPQuery& query, FragmentSource& source,
                        const ExecutionOptions& options, const RowSink& sink) {
  return run(query, Mode::spf, star_decompose(query).stars, source, options, sink);
}

QueryResult execute_brtpf(const BGPQuery& query, FragmentSource& source,
                          const ExecutionOptions& options, const RowSink& sink) {
  return run(query, Mode::brtpf, singleton_stars(query).stars, source, options, sink);
}

QueryResult execute_tpf(const BGPQuery& query, FragmentSource& source,
                        const ExecutionOptions& options, const RowSink& sink) {
  return run(query, Mode::tpf, singleton_stars(query).stars, source, options, sink);
}

QueryResult run_query(const BGPQuery& query, Mode mode, FragmentSource& source,
                      const ExecutionOptions& options, const RowSink& sink) {
  switch (mode) {
    case Mode::spf:
      return execute_spf(query, source, options, sink);
    case Mode::brtpf:
      return execute_brtpf(query, source, options, sink);
    case Mode::tpf:
      return execute_tpf(query, source, options, sink);
  }
  throw std::invalid_argument("unknown mode");
}

}  // namespace spf::client
