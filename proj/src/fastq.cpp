#include "dioph/fastq.hpp"

#include <algorithm>
#include <limits>

namespace dioph::fastq {

std::optional<Form> Form::compile(const HomogeneousForm& f) {
  if (f.nvars() > 8) return std::nullopt;
  Form out;
  out.nvars_ = f.nvars();
  out.degree_ = f.degree();
  for (const auto& [e, c] : f.terms()) {
    if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return std::nullopt;
    out.coeffs_.push_back(c.get_num().get_si());
    for (int i = 0; i < out.nvars_; ++i) out.vars_.insert(out.vars_.end(), e[i], static_cast<std::uint8_t>(i));
    out.norm1_ += std::fabs(static_cast<long double>(out.coeffs_.back()));
  }
  return out;
}

namespace {

long double value_bits(long double norm1, int degree, std::int64_t bound) {
  // log2 |F(x)| <= log2 ||F||_1 + deg * log2(bound)
  return std::log2(norm1) + degree * std::log2(static_cast<long double>(std::max<std::int64_t>(bound, 1)));
}

}  // namespace

bool Form::safe_for(std::int64_t bound) const {
  return coeffs_.empty() || value_bits(norm1_, degree_, bound) < 120.0L;
}

bool Form::fits64(std::int64_t bound) const {
  return coeffs_.empty() || value_bits(norm1_, degree_, bound) < 62.0L;
}

LogTable::LogTable(std::int64_t limit) : table_(static_cast<std::size_t>(std::max<std::int64_t>(limit, 1) + 1)) {
  table_[0] = -std::numeric_limits<long double>::infinity();
  for (std::size_t i = 1; i < table_.size(); ++i) table_[i] = std::log(static_cast<long double>(i));
}

GcdTable::GcdTable(std::int64_t limit) : limit_(limit) {
  const std::size_t w = static_cast<std::size_t>(limit + 1);
  table_.resize(w * w);
  for (std::int64_t a = 0; a <= limit; ++a) {
    for (std::int64_t b = 0; b <= limit; ++b) {
      table_[static_cast<std::size_t>(a) * w + static_cast<std::size_t>(b)] =
          static_cast<std::uint16_t>(std::gcd(a, b));
    }
  }
}

std::optional<GeneratorSet> GeneratorSet::compile(const std::vector<HomogeneousForm>& gens) {
  GeneratorSet s;
  for (const auto& g : gens) {
    auto f = Form::compile(g);
    if (!f) return std::nullopt;
    s.forms_.push_back(std::move(*f));
  }
  return s;
}

bool GeneratorSet::safe_for(std::int64_t bound) const {
  return std::all_of(forms_.begin(), forms_.end(), [&](const Form& f) { return f.safe_for(bound); });
}

bool GeneratorSet::fits64(std::int64_t bound) const {
  return std::all_of(forms_.begin(), forms_.end(), [&](const Form& f) { return f.fits64(bound); });
}

namespace {

// No infinities here: x87 arithmetic on them is very slow.
template <class T, class Eval, class Gcd>
GeneratorHeights evaluate_impl(const std::vector<Form>& forms, long double log_max, const LogTable& logs, Eval eval,
                               Gcd gcd) {
  GeneratorHeights h;
  T g = 0;
  bool any = false;
  for (const auto& f : forms) {
    const T v = eval(f);
    if (v == 0) continue;
    if (g != 1) g = gcd(g, v);
    const long double local = f.degree() * log_max - logs(v);
    h.archimedean = any ? std::min(h.archimedean, local) : local;
    any = true;
  }
  if (!any) {
    h.on_cycle = true;
    return h;
  }
  h.finite_gcd = g;
  h.finite = g == 1 ? 0.0L : logs(g);
  return h;
}

}  // namespace

GeneratorHeights GeneratorSet::evaluate(const std::int64_t* x, long double log_max, const LogTable& logs) const {
  return evaluate_impl<i128>(
      forms_, log_max, logs, [&](const Form& f) { return f.eval(x); }, gcd128);
}

GeneratorHeights GeneratorSet::evaluate64(const std::int64_t* x, long double log_max, const LogTable& logs) const {
  return evaluate_impl<std::int64_t>(
      forms_, log_max, logs, [&](const Form& f) { return f.eval64(x); },
      [](std::int64_t a, std::int64_t b) {
        return static_cast<std::int64_t>(gcd64(a < 0 ? -a : a, b < 0 ? -b : b));
      });
}

}  // namespace dioph::fastq
