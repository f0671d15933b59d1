#pragma once

#include "kontakt/expr.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kontakt {

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

class Chart {
public:
    // sin/cos declarations are completed to pairs; duplicates and repeated names are rejected
    static ChartPtr make(std::string name, std::vector<std::string> coords, std::vector<GenDecl> gens = {});

    const std::string &name() const { return name_; }
    const std::vector<std::string> &coords() const { return coords_; }
    const std::vector<GenDecl> &gens() const { return gens_; }
    int dim() const { return static_cast<int>(coords_.size()); }
    // -1 when absent
    int index(const std::string &coord) const;
    int require(const std::string &coord) const;
    bool declares(GenKind k, int coord) const;
    NameFn namer() const;
    ParseContext context() const;
    Expr parse(std::string_view text) const;
    Expr x(const std::string &coord) const { return Expr::coord(require(coord)); }

private:
    Chart() = default;
    std::string name_;
    std::vector<std::string> coords_;
    std::vector<GenDecl> gens_;
};

bool same_chart(const ChartPtr &a, const ChartPtr &b);
void require_same_chart(const ChartPtr &a, const ChartPtr &b);

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(ChartPtr chart); // zero field
    VectorField(ChartPtr chart, std::vector<Expr> comps);
    // coordinate basis field d/dx_i
    static VectorField basis(ChartPtr chart, int i);

    const ChartPtr &chart() const { return chart_; }
    int dim() const { return static_cast<int>(c_.size()); }
    const Expr &operator[](int i) const { return c_[i]; }
    Expr &operator[](int i) { return c_[i]; }
    const std::vector<Expr> &comps() const { return c_; }
    bool is_zero() const;

    // X(f) = sum X^i df/dx^i
    Expr apply(const Expr &f) const;

    VectorField &operator+=(const VectorField &o);
    VectorField &operator-=(const VectorField &o);
    friend VectorField operator+(VectorField a, const VectorField &b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField &b) { return a -= b; }
    friend VectorField operator*(const Expr &f, const VectorField &v);
    VectorField operator-() const;
    friend bool operator==(const VectorField &a, const VectorField &b);
    friend bool operator!=(const VectorField &a, const VectorField &b) { return !(a == b); }

    // e.g. "x^2*d/dz + d/dt"
    std::string str() const;

private:
    ChartPtr chart_;
    std::vector<Expr> c_;
};

struct KVectorField {
    std::vector<VectorField> fields;
    ChartPtr chart() const { return fields.empty() ? nullptr : fields[0].chart(); }
    int k() const { return static_cast<int>(fields.size()); }
    const VectorField &operator[](int a) const { return fields[a]; }
};

// strictly increasing coordinate indices
using MultiIndex = std::vector<int>;

// R^k-valued p-form, stored channel by channel. Zero coefficients are never stored.
class Form {
public:
    using Channel = std::map<MultiIndex, Expr>;

    Form() = default;
    Form(ChartPtr chart, int degree, int channels);
    static Form function(ChartPtr chart, std::vector<Expr> values);
    static Form function(ChartPtr chart, const Expr &value) { return function(std::move(chart), std::vector<Expr>{value}); }
    static Form dx(ChartPtr chart, int i);
    // joins 1-channel forms of equal degree into one multichannel form
    static Form stack(const std::vector<Form> &channels);

    const ChartPtr &chart() const { return chart_; }
    int degree() const { return degree_; }
    int channels() const { return static_cast<int>(ch_.size()); }
    int dim() const { return chart_ ? chart_->dim() : 0; }
    const Channel &channel_terms(int a) const { return ch_[a]; }
    Form channel(int a) const;
    Expr get(int a, const MultiIndex &I) const;
    void set(int a, const MultiIndex &I, const Expr &v);
    void add(int a, const MultiIndex &I, const Expr &v);
    bool is_zero() const;
    bool channel_is_zero(int a) const { return ch_[a].empty(); }
    // coefficient list of a 1-form channel, length dim
    std::vector<Expr> covector(int a) const;
    // value of a 0-form channel
    Expr value(int a = 0) const { return get(a, {}); }

    Form &operator+=(const Form &o);
    Form &operator-=(const Form &o);
    friend Form operator+(Form a, const Form &b) { return a += b; }
    friend Form operator-(Form a, const Form &b) { return a -= b; }
    friend Form operator*(const Expr &f, const Form &a);
    Form operator-() const;
    friend bool operator==(const Form &a, const Form &b);
    friend bool operator!=(const Form &a, const Form &b) { return !(a == b); }

    // channel text, e.g. "dz - p*dx" or "dx^dp"; multichannel forms print channels joined by " ; "
    std::string channel_str(int a) const;
    std::string str() const;

private:
    ChartPtr chart_;
    int degree_ = 0;
    std::vector<Channel> ch_;
};

Form wedge(const Form &a, const Form &b);
Form ext_d(const Form &a);
Form interior_product(const VectorField &X, const Form &a);
VectorField lie_bracket(const VectorField &X, const VectorField &Y);
// computed as d i_X + i_X d and by the coordinate formula; a disagreement is an Internal error
Form lie_derivative(const VectorField &X, const Form &a);
// map[i] is the pullback of target coordinate i, expressed on the source chart
Form pullback(const ChartPtr &source, const std::vector<Expr> &map, const Form &a);
Form pullback(const ChartPtr &source, const std::map<std::string, Expr> &map, const Form &a);
bool kvec_is_integrable(const KVectorField &X);

// a(X, Y) = i_Y i_X a for one channel of a 2-form
Expr pair2(const Form &a, int channel, const VectorField &X, const VectorField &Y);
// i_X a for one channel of a 1-form
Expr pair1(const Form &a, int channel, const VectorField &X);

} // namespace kontakt
