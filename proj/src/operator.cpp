#include "ornstein/operator.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ornstein/error.hpp"

namespace ornstein {

std::vector<MultiIndex> DifferentialOperator::diagram() const {
    std::vector<MultiIndex> points;
    points.reserve(terms.size());
    for (const auto& [alpha, coeff] : terms) points.push_back(alpha);
    return points;
}

int DifferentialOperator::max_order_along(int axis) const {
    int best = 0;
    for (const auto& [alpha, coeff] : terms) best = std::max(best, alpha[axis]);
    return best;
}

int DifferentialOperator::max_degree() const {
    int best = 0;
    for (const auto& [alpha, coeff] : terms) best = std::max(best, degree(alpha));
    return best;
}

namespace {

// Recursive-descent parser over the raw expression text. Every throw carries
// the current character position.
class ExprParser {
public:
    ExprParser(const std::string& text, int dim) : text_(text), dim_(dim) {}

    std::map<MultiIndex, Rational> run() {
        std::map<MultiIndex, Rational> acc;
        skip_space();
        if (done()) fail("empty operator expression");
        Rational sign = 1;
        if (peek() == '+' || peek() == '-') {
            if (take() == '-') sign = -1;
        }
        parse_term(acc, sign);
        skip_space();
        while (!done()) {
            const char c = take();
            if (c == '+') sign = 1;
            else if (c == '-') sign = -1;
            else fail("expected '+' or '-' between terms", pos_ - 1);
            parse_term(acc, sign);
            skip_space();
        }
        for (auto it = acc.begin(); it != acc.end();) {
            if (it->second == 0) it = acc.erase(it);
            else ++it;
        }
        if (acc.empty())
            throw ParseError("operator vanishes: every monomial cancelled", pos_);
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError(msg + " (column " + std::to_string(at + 1) + ")", at);
    }

    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    char take() { return text_[pos_++]; }
    void skip_space() {
        while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_digit() const { return std::isdigit(static_cast<unsigned char>(peek())); }

    std::string take_digits() {
        std::string out;
        while (at_digit()) out += take();
        return out;
    }

    long long parse_int(const char* what) {
        skip_space();
        const std::size_t at = pos_;
        const std::string digits = take_digits();
        if (digits.empty()) fail(std::string("expected ") + what, at);
        if (digits.size() > 9) fail(std::string(what) + " out of range", at);
        return std::stoll(digits);
    }

    Rational parse_coefficient() {
        const std::size_t at = pos_;
        std::string body = take_digits();
        if (peek() == '/') {
            body += take();
            body += take_digits();
        } else if (peek() == '.') {
            body += take();
            body += take_digits();
        }
        try {
            return parse_rational(body);
        } catch (const ParseError& e) {
            fail(e.what(), at);
        }
    }

    // factor := 'd' index ['^' int]
    void parse_factor(MultiIndex& alpha) {
        skip_space();
        const std::size_t at = pos_;
        if (peek() != 'd') fail("expected derivative factor 'd<axis>'");
        take();
        const long long axis = parse_int("axis index after 'd'");
        if (axis < 1 || axis > dim_)
            fail("axis index " + std::to_string(axis) + " out of range for dim=" +
                     std::to_string(dim_),
                 at);
        long long exponent = 1;
        if (peek() == '^') {
            take();
            exponent = parse_int("exponent after '^'");
            if (exponent < 1) fail("exponent must be >= 1", at);
        }
        if (exponent > 64) fail("exponent out of range", at);
        alpha[static_cast<std::size_t>(axis - 1)] += static_cast<int>(exponent);
    }

    // mono := 'd^(' int (',' int)* ')' | factor ('*' factor)*
    MultiIndex parse_mono() {
        skip_space();
        MultiIndex alpha(static_cast<std::size_t>(dim_), 0);
        if (peek() != 'd') fail("expected monomial starting with 'd'");
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '^' && text_[pos_ + 2] == '(') {
            const std::size_t at = pos_;
            pos_ += 3;
            for (int i = 0; i < dim_; ++i) {
                if (i) {
                    skip_space();
                    if (peek() != ',')
                        fail("tuple form needs exactly dim=" + std::to_string(dim_) +
                                 " entries",
                             at);
                    take();
                }
                const long long e = parse_int("tuple entry");
                if (e > 64) fail("tuple entry out of range", at);
                alpha[static_cast<std::size_t>(i)] = static_cast<int>(e);
            }
            skip_space();
            if (peek() != ')')
                fail("tuple form needs exactly dim=" + std::to_string(dim_) + " entries",
                     at);
            take();
            return alpha;
        }
        parse_factor(alpha);
        skip_space();
        while (peek() == '*') {
            take();
            parse_factor(alpha);
            skip_space();
        }
        return alpha;
    }

    // term := [rational '*'] mono
    void parse_term(std::map<MultiIndex, Rational>& acc, const Rational& sign) {
        skip_space();
        Rational coeff = 1;
        if (at_digit()) {
            coeff = parse_coefficient();
            skip_space();
            if (peek() != '*') fail("expected '*' between coefficient and monomial");
            take();
        }
        const MultiIndex alpha = parse_mono();
        acc[alpha] += sign * coeff;
    }

    const std::string& text_;
    const int dim_;
    std::size_t pos_ = 0;
};

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

DifferentialOperator parse_operator(const std::string& text, int dim,
                                    const std::string& name) {
    if (dim < 1) throw DomainError("operator dimension must be >= 1");
    DifferentialOperator op;
    op.dim = dim;
    op.name = name;
    op.terms = ExprParser(text, dim).run();
    return op;
}

std::vector<DifferentialOperator> read_operator_file(std::istream& in) {
    std::vector<DifferentialOperator> ops;
    std::string line;
    std::size_t line_no = 0;
    int dim = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (dim == 0) {
            if (body.rfind("dim=", 0) != 0)
                throw ParseError("first effective line must be 'dim=<d>'", 0, line_no);
            try {
                dim = std::stoi(body.substr(4));
            } catch (const std::exception&) {
                throw ParseError("malformed dimension line '" + body + "'", 0, line_no);
            }
            if (dim < 1 || dim > 16)
                throw ParseError("dimension out of range in '" + body + "'", 0, line_no);
            continue;
        }
        const auto colon = body.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected 'name: expression'", 0, line_no);
        const std::string name = trim(body.substr(0, colon));
        if (name.empty()) throw ParseError("operator name is empty", 0, line_no);
        try {
            ops.push_back(parse_operator(body.substr(colon + 1), dim, name));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " in operator '" + name + "'",
                             e.position, line_no);
        }
    }
    if (dim == 0) throw ParseError("no 'dim=<d>' line found", 0, line_no);
    if (ops.empty()) throw ParseError("no operators defined", 0, line_no);
    return ops;
}

std::vector<DifferentialOperator> read_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open operator file '" + path + "'");
    return read_operator_file(in);
}

std::string to_string(const DifferentialOperator& op) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [alpha, coeff] : op.terms) {
        Rational c = coeff;
        if (first) {
            if (c < 0) {
                out << "-";
                c = -c;
            }
        } else {
            out << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (c != 1) out << to_string(Rational(c)) << "*";
        out << "d^" << format_multi_index(alpha);
    }
    return out.str();
}

} // namespace ornstein
