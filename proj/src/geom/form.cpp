#include "kontakt/error.hpp"
#include "kontakt/geom.hpp"

#include "format.hpp"

namespace kontakt {

Form::Form(ChartPtr chart, int degree, int channels) : chart_(std::move(chart)), degree_(degree), ch_(channels) {
    if (channels < 0) throw Error(Errc::ChannelMismatch, "negative channel count");
    if (degree < 0) throw Error(Errc::DegreeError, "negative degree");
}

Form Form::function(ChartPtr chart, std::vector<Expr> values) {
    Form f(std::move(chart), 0, static_cast<int>(values.size()));
    for (int a = 0; a < f.channels(); ++a) f.set(a, {}, values[a]);
    return f;
}

Form Form::dx(ChartPtr chart, int i) {
    if (i < 0 || i >= chart->dim()) throw Error(Errc::UnknownCoordinate, "coordinate index " + std::to_string(i));
    Form f(std::move(chart), 1, 1);
    f.set(0, {i}, Expr(1));
    return f;
}

Form Form::stack(const std::vector<Form> &channels) {
    if (channels.empty()) throw Error(Errc::ChannelMismatch, "no channels to stack");
    Form r(channels[0].chart_, channels[0].degree_, 1);
    r.ch_.clear();
    for (const auto &f : channels) {
        require_same_chart(r.chart_, f.chart_);
        if (f.degree_ != r.degree_) throw Error(Errc::DegreeError, "stacked channels differ in degree");
        for (const auto &c : f.ch_) r.ch_.push_back(c);
    }
    return r;
}

Form Form::channel(int a) const {
    Form r(chart_, degree_, 1);
    r.ch_[0] = ch_.at(a);
    return r;
}

Expr Form::get(int a, const MultiIndex &I) const {
    auto it = ch_.at(a).find(I);
    return it == ch_[a].end() ? Expr() : it->second;
}

void Form::set(int a, const MultiIndex &I, const Expr &v) {
    if (static_cast<int>(I.size()) != degree_) throw Error(Errc::DegreeError, "multi-index length differs from degree");
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] < 0 || I[i] >= dim()) throw Error(Errc::UnknownCoordinate, "multi-index entry out of range");
        if (i && I[i] <= I[i - 1]) throw Error(Errc::Internal, "multi-index not strictly increasing");
    }
    if (v.is_zero())
        ch_.at(a).erase(I);
    else
        ch_.at(a)[I] = v;
}

void Form::add(int a, const MultiIndex &I, const Expr &v) {
    if (v.is_zero()) return;
    auto &c = ch_.at(a);
    auto it = c.find(I);
    if (it == c.end()) {
        set(a, I, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) c.erase(it);
}

bool Form::is_zero() const {
    for (const auto &c : ch_)
        if (!c.empty()) return false;
    return true;
}

std::vector<Expr> Form::covector(int a) const {
    if (degree_ != 1) throw Error(Errc::DegreeError, "covector of a form of degree " + std::to_string(degree_));
    std::vector<Expr> v(dim());
    for (const auto &[I, e] : ch_.at(a)) v[I[0]] = e;
    return v;
}

static void check_compatible(const Form &a, const Form &b) {
    require_same_chart(a.chart(), b.chart());
    if (a.degree() != b.degree()) throw Error(Errc::DegreeError, "adding forms of different degree");
    if (a.channels() != b.channels()) throw Error(Errc::ChannelMismatch, "adding forms with different channel counts");
}

Form &Form::operator+=(const Form &o) {
    check_compatible(*this, o);
    for (int a = 0; a < channels(); ++a)
        for (const auto &[I, e] : o.ch_[a]) add(a, I, e);
    return *this;
}

Form &Form::operator-=(const Form &o) {
    check_compatible(*this, o);
    for (int a = 0; a < channels(); ++a)
        for (const auto &[I, e] : o.ch_[a]) add(a, I, -e);
    return *this;
}

Form operator*(const Expr &f, const Form &a) {
    Form r(a.chart_, a.degree_, a.channels());
    if (f.is_zero()) return r;
    for (int c = 0; c < a.channels(); ++c)
        for (const auto &[I, e] : a.ch_[c]) r.ch_[c][I] = f * e;
    return r;
}

Form Form::operator-() const { return Expr(-1) * *this; }

bool operator==(const Form &a, const Form &b) {
    if (!same_chart(a.chart_, b.chart_) || a.degree_ != b.degree_ || a.channels() != b.channels()) return false;
    for (int c = 0; c < a.channels(); ++c) {
        if (a.ch_[c].size() != b.ch_[c].size()) return false;
        for (const auto &[I, e] : a.ch_[c]) {
            auto it = b.ch_[c].find(I);
            if (it == b.ch_[c].end() || it->second != e) return false;
        }
    }
    return true;
}

std::string Form::channel_str(int a) const {
    auto name = chart_->namer();
    if (degree_ == 0) return value(a).str(name);
    std::vector<std::string> terms;
    for (const auto &[I, e] : ch_.at(a)) {
        std::string atom;
        for (std::size_t i = 0; i < I.size(); ++i) atom += (i ? "^d" : "d") + chart_->coords()[I[i]];
        terms.push_back(detail::scaled_atom(e, atom, name));
    }
    return detail::join_terms(terms);
}

std::string Form::str() const {
    std::string s;
    for (int a = 0; a < channels(); ++a) s += (a ? " ; " : "") + channel_str(a);
    return s;
}

} // namespace kontakt
