#include "spf/rdf/triple.hpp"

#include <algorithm>

namespace spf::rdf {

std::vector<std::string> TriplePattern::variables() const {
  std::vector<std::string> out;
  for (const Term* t : {&subject, &predicate, &object}) {
    if (t->is_variable() &&
        std::find(out.begin(), out.end(), t->lexical) == out.end()) {
      out.push_back(t->lexical);
    }
  }
  return out;
}

bool TriplePattern::is_ground() const {
  return subject.is_constant() && predicate.is_constant() && object.is_constant();
}

void validate(const Triple& t) {
  bool ok = (t.subject.kind == TermKind::iri || t.subject.kind == TermKind::blank) &&
            t.predicate.kind == TermKind::iri && t.object.is_constant();
  if (!ok) {
    throw InvalidTerm("invalid triple " + to_string(t.subject) + " " +
                      to_string(t.predicate) + " " + to_string(t.object));
  }
}

void validate(const TriplePattern& tp) {
  bool ok = tp.subject.kind != TermKind::literal &&
            (tp.predicate.kind == TermKind::iri || tp.predicate.is_variable());
  if (!ok) throw InvalidTerm("invalid triple pattern " + to_string(tp));
}

TriplePattern as_pattern(const Triple& t) { return {t.subject, t.predicate, t.object}; }

Triple as_triple(const TriplePattern& tp) {
  if (!tp.is_ground()) throw InvalidTerm("pattern is not ground: " + to_string(tp));
  return {tp.subject, tp.predicate, tp.object};
}

std::string to_string(const TriplePattern& tp) {
  return "(" + to_string(tp.subject) + " " + to_string(tp.predicate) + " " +
         to_string(tp.object) + ")";
}

StarPattern::StarPattern(std::vector<TriplePattern> patterns)
    : patterns_(std::move(patterns)) {
  if (patterns_.empty()) throw InvalidTerm("star pattern must not be empty");
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    validate(patterns_[i]);
    if (patterns_[i].subject != patterns_.front().subject) {
      throw InvalidTerm("star pattern subjects differ: " + to_string(patterns_[i]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (patterns_[j] == patterns_[i]) {
        throw InvalidTerm("duplicate pattern in star: " + to_string(patterns_[i]));
      }
    }
  }
}

std::vector<std::string> StarPattern::variables() const {
  std::vector<std::string> out;
  for (const auto& tp : patterns_) {
    for (auto& v : tp.variables()) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  }
  return out;
}

bool StarPattern::has_variable(const std::string& name) const {
  return std::any_of(patterns_.begin(), patterns_.end(), [&](const TriplePattern& tp) {
    for (const Term* t : {&tp.subject, &tp.predicate, &tp.object}) {
      if (t->is_variable() && t->lexical == name) return true;
    }
    return false;
  });
}

}  // namespace spf::rdf
