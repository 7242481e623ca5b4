#include <iomanip>
#include <set>
#include <sstream>

#include "phishrev/revision.hpp"
#include "phishrev/text.hpp"

namespace phishrev {

namespace {

std::string display_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::svm: return "SVM";
    case ClassifierKind::knn: return "KNN";
    case ClassifierKind::dt: return "DT";
    case ClassifierKind::rf: return "RF";
  }
  return "?";
}

std::string fmt4(double v) { return text::format_fixed(v, 4); }

void emit_confusion(std::ostream& out, const std::string& prefix, const Confusion& c, std::string_view stage) {
  out << prefix << "tp_" << stage << '=' << c.tp << '\n';
  out << prefix << "fp_" << stage << '=' << c.fp << '\n';
  out << prefix << "tn_" << stage << '=' << c.tn << '\n';
  out << prefix << "fn_" << stage << '=' << c.fn << '\n';
}

void emit_metrics(std::ostream& out, const std::string& prefix, const Confusion& c, std::string_view stage) {
  out << prefix << "accuracy_" << stage << '=' << fmt4(c.accuracy()) << '\n';
  for (auto cls : {Label::legitimate, Label::phishing}) {
    const auto tag = std::to_string(label_value(cls));
    out << prefix << "precision" << tag << '_' << stage << '=' << fmt4(c.precision(cls)) << '\n';
    out << prefix << "recall" << tag << '_' << stage << '=' << fmt4(c.recall(cls)) << '\n';
    out << prefix << "f1" << tag << '_' << stage << '=' << fmt4(c.f1(cls)) << '\n';
  }
}

}  // namespace

std::string report_to_kv(const RevisionReport& report) {
  std::ostringstream out;
  for (const auto& c : report.classifiers) {
    const std::string p = std::string(kind_symbol(c.kind)) + ".";
    emit_confusion(out, p, c.before, "before");
    emit_confusion(out, p, c.after, "after");
    out << p << "revised_count=" << c.revised_count << '\n';
    std::vector<std::string> ids;
    for (auto id : c.revised_ids) ids.push_back(std::to_string(id));
    out << p << "revised_ids=" << text::join(ids, ";") << '\n';
    emit_metrics(out, p, c.before, "before");
    emit_metrics(out, p, c.after, "after");
  }
  out << "total.revised=" << report.total_revised << '\n';
  out << "total.decisions=" << report.total_decisions << '\n';
  out << "total.revised_fraction=" << fmt4(report.revised_fraction()) << '\n';
  return out.str();
}

RevisionReport report_from_kv(std::string_view kv) {
  std::map<ClassifierKind, ClassifierRevision> per_kind;
  std::map<ClassifierKind, std::set<std::string>> seen;
  RevisionReport report;
  bool have_revised = false;
  bool have_decisions = false;

  std::istringstream in{std::string(kv)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw RevisionError("report.kv line " + std::to_string(line_no) + ": " + what);
  };
  auto count = [&](const std::string& v) {
    auto n = text::parse_int(v);
    if (!n || *n < 0) fail("expected a non-negative integer, got '" + v + "'");
    return static_cast<std::size_t>(*n);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto eq = line.find('=');
    const auto dot = line.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) fail("expected classifier.metric=value");
    const auto scope = line.substr(0, dot);
    const auto metric = line.substr(dot + 1, eq - dot - 1);
    const auto value = line.substr(eq + 1);

    if (scope == "total") {
      if (metric == "revised") {
        report.total_revised = count(value);
        have_revised = true;
      } else if (metric == "decisions") {
        report.total_decisions = count(value);
        have_decisions = true;
      } else if (metric != "revised_fraction") {
        fail("unknown metric total." + metric);
      }
      continue;
    }
    const auto kind = kind_from_symbol(scope);
    if (!kind) fail("unknown classifier '" + scope + "'");
    auto& c = per_kind[*kind];
    c.kind = *kind;
    seen[*kind].insert(metric);

    static const std::map<std::string, std::size_t Confusion::*> counts = {
        {"tp", &Confusion::tp}, {"fp", &Confusion::fp}, {"tn", &Confusion::tn}, {"fn", &Confusion::fn}};
    bool handled = false;
    for (const auto& [name, member] : counts) {
      if (metric == name + "_before") {
        c.before.*member = count(value);
        handled = true;
      } else if (metric == name + "_after") {
        c.after.*member = count(value);
        handled = true;
      }
    }
    if (handled) continue;
    if (metric == "revised_count") {
      c.revised_count = count(value);
    } else if (metric == "revised_ids") {
      if (!value.empty())
        for (const auto& part : text::split(value, ';')) c.revised_ids.push_back(count(part));
    } else {
      static const std::set<std::string> derived = [] {
        std::set<std::string> s;
        for (std::string stage : {"before", "after"}) {
          s.insert("accuracy_" + stage);
          for (std::string m : {"precision", "recall", "f1"})
            for (std::string cls : {"0", "1"}) s.insert(m + cls + "_" + stage);
        }
        return s;
      }();
      if (!derived.contains(metric)) fail("unknown metric " + scope + "." + metric);
    }
  }

  for (const auto& [kind, metrics] : seen) {
    for (std::string m : {"tp_before", "fp_before", "tn_before", "fn_before", "tp_after", "fp_after", "tn_after",
                          "fn_after", "revised_count"})
      if (!metrics.contains(m))
        throw RevisionError("report.kv: missing " + std::string(kind_symbol(kind)) + "." + m);
  }
  if (per_kind.empty() || !have_revised || !have_decisions) throw RevisionError("report.kv: incomplete report");
  for (auto& [kind, c] : per_kind) report.classifiers.push_back(std::move(c));
  return report;
}

std::string render_report(const RevisionReport& report) {
  std::ostringstream out;
  out << "Belief revision report (positive class: phishing)\n\n";
  out << std::left << std::setw(11) << "Classifier" << std::right << std::setw(9) << "Revised" << std::setw(11)
      << "FP before" << std::setw(10) << "FP after" << std::setw(11) << "FN before" << std::setw(10) << "FN after"
      << std::setw(12) << "Acc before" << std::setw(11) << "Acc after" << '\n';
  for (const auto& c : report.classifiers) {
    out << std::left << std::setw(11) << display_name(c.kind) << std::right << std::setw(9) << c.revised_count
        << std::setw(11) << c.before.fp << std::setw(10) << c.after.fp << std::setw(11) << c.before.fn
        << std::setw(10) << c.after.fn << std::setw(12) << fmt4(c.before.accuracy()) << std::setw(11)
        << fmt4(c.after.accuracy()) << '\n';
  }
  out << "\nTotal revised: " << report.total_revised << " of " << report.total_decisions << " decisions ("
      << text::format_fixed(100.0 * report.revised_fraction(), 2) << "%)\n";
  return out.str();
}

std::string render_comparison(const RevisionReport& report) {
  std::ostringstream out;
  const std::size_t k = report.classifiers.size();
  const int cell = 6;
  const int half = static_cast<int>(k) * cell;

  auto centered = [](const std::string& s, int width) {
    const int pad = std::max(0, width - static_cast<int>(s.size()));
    return std::string(static_cast<std::size_t>(pad / 2), ' ') + s +
           std::string(static_cast<std::size_t>(pad - pad / 2), ' ');
  };

  out << "False positives (FP) and false negatives (FN)\n\n";
  out << std::string(5, ' ') << '|' << centered("Without NMR", half) << '|' << centered("With NMR", half) << "|\n";
  out << std::string(5, ' ') << '|';
  for (int stage = 0; stage < 2; ++stage) {
    for (const auto& c : report.classifiers) out << std::setw(cell) << display_name(c.kind);
    out << '|';
  }
  out << '\n';
  auto row = [&](const std::string& name, std::size_t Confusion::*member) {
    out << std::left << std::setw(5) << name << std::right << '|';
    for (const auto& c : report.classifiers) out << std::setw(cell) << c.before.*member;
    out << '|';
    for (const auto& c : report.classifiers) out << std::setw(cell) << c.after.*member;
    out << "|\n";
  };
  row("FP", &Confusion::fp);
  row("FN", &Confusion::fn);

  out << "\nClassification metrics (legitimate = 0, phishing = 1)\n\n";
  out << std::left << std::setw(13) << "Stage" << std::setw(11) << "Algorithm" << std::right << std::setw(13)
      << "Accuracy (%)" << std::setw(17) << "Precision 0/1" << std::setw(17) << "Recall 0/1" << std::setw(17)
      << "F1 0/1" << '\n';
  auto pair = [](double a, double b) { return fmt4(a) + "/" + fmt4(b); };
  for (int stage = 0; stage < 2; ++stage) {
    for (const auto& c : report.classifiers) {
      const Confusion& m = stage == 0 ? c.before : c.after;
      out << std::left << std::setw(13) << (stage == 0 ? "Without NMR" : "With NMR") << std::setw(11)
          << display_name(c.kind) << std::right << std::setw(13) << text::format_fixed(100.0 * m.accuracy(), 2)
          << std::setw(17) << pair(m.precision(Label::legitimate), m.precision(Label::phishing)) << std::setw(17)
          << pair(m.recall(Label::legitimate), m.recall(Label::phishing)) << std::setw(17)
          << pair(m.f1(Label::legitimate), m.f1(Label::phishing)) << '\n';
    }
  }
  out << "\nRevised decisions: " << report.total_revised << " of " << report.total_decisions << " ("
      << text::format_fixed(100.0 * report.revised_fraction(), 2) << "%)\n";
  return out.str();
}

}  // namespace phishrev
