#include "drx/parser.hpp"
#include "drx/errors.hpp"

#include <cctype>

namespace drx {

namespace {

enum class Tok { Num, VarT, VarG, VarSmallT, Tau, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::uint64_t num = 0;
    std::size_t tok_pos = 0;

    explicit Lexer(std::string_view s) : src(s) { advance(); }

    void advance() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        tok_pos = pos;
        if (pos >= src.size()) {
            tok = Tok::End;
            return;
        }
        char c = src[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            num = 0;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                num = num * 10 + static_cast<std::uint64_t>(src[pos] - '0');
                if (num > (1ull << 62)) throw parse_error("integer literal too large", tok_pos);
                ++pos;
            }
            tok = Tok::Num;
            return;
        }
        if (c == 't' && src.substr(pos, 3) == "tau") {
            pos += 3;
            tok = Tok::Tau;
            return;
        }
        switch (c) {
            case 'T': tok = Tok::VarT; break;
            case 'g': tok = Tok::VarG; break;
            case 't': tok = Tok::VarSmallT; break;
            case '+': tok = Tok::Plus; break;
            case '-': tok = Tok::Minus; break;
            case '*': tok = Tok::Star; break;
            case '/': tok = Tok::Slash; break;
            case '^': tok = Tok::Caret; break;
            case '(': tok = Tok::LParen; break;
            case ')': tok = Tok::RParen; break;
            default: throw parse_error(std::string("unexpected character '") + c + "'", pos);
        }
        ++pos;
    }

    std::uint64_t expect_uint() {
        if (tok != Tok::Num) throw parse_error("expected a non-negative integer", tok_pos);
        std::uint64_t v = num;
        advance();
        return v;
    }
};

// Recursive-descent evaluation of the element grammar directly into K.
struct KParser {
    Lexer& lx;
    const FqPtr& f;

    KElement expr() {
        bool neg = false;
        if (lx.tok == Tok::Minus) {
            neg = true;
            lx.advance();
        } else if (lx.tok == Tok::Plus) {
            lx.advance();
        }
        KElement acc = term();
        if (neg) acc = -acc;
        while (lx.tok == Tok::Plus || lx.tok == Tok::Minus) {
            bool sub = lx.tok == Tok::Minus;
            lx.advance();
            KElement t = term();
            acc = sub ? acc - t : acc + t;
        }
        return acc;
    }

    KElement term() {
        KElement acc = factor();
        for (;;) {
            if (lx.tok == Tok::Star) {
                lx.advance();
                acc = acc * factor();
            } else if (lx.tok == Tok::Slash) {
                lx.advance();
                acc = acc / factor();
            } else {
                break;
            }
        }
        return acc;
    }

    KElement factor() {
        KElement base = atom();
        if (lx.tok == Tok::Caret) {
            lx.advance();
            base = base.pow(lx.expect_uint());
        }
        return base;
    }

    KElement atom() {
        switch (lx.tok) {
            case Tok::Num: {
                if (lx.num >= f->p())
                    throw parse_error("coefficient out of range for F_p", lx.tok_pos);
                KElement v = KElement::from_int(f, static_cast<long>(lx.num));
                lx.advance();
                return v;
            }
            case Tok::VarT: {
                lx.advance();
                return KElement::theta(f);
            }
            case Tok::VarG: {
                if (f->m() < 2) throw parse_error("g is only defined for extension fields", lx.tok_pos);
                lx.advance();
                return KElement::from_fq(f->gen());
            }
            case Tok::LParen: {
                lx.advance();
                KElement v = expr();
                if (lx.tok != Tok::RParen) throw parse_error("expected ')'", lx.tok_pos);
                lx.advance();
                return v;
            }
            case Tok::Tau:
                throw parse_error("tau is not allowed in a field element", lx.tok_pos);
            default:
                throw parse_error("expected a field-element atom", lx.tok_pos);
        }
    }

    // Product of K factors that stops in front of `* tau`.
    KElement coefficient_product() {
        KElement acc = factor();
        for (;;) {
            if (lx.tok == Tok::Star) {
                std::size_t save_pos = lx.pos, save_tok_pos = lx.tok_pos;
                Tok save_tok = lx.tok;
                std::uint64_t save_num = lx.num;
                lx.advance();
                if (lx.tok == Tok::Tau) return acc;   // leave tau for the caller
                // plain product; keep going
                (void)save_pos;
                (void)save_tok_pos;
                (void)save_tok;
                (void)save_num;
                acc = acc * factor();
            } else if (lx.tok == Tok::Slash) {
                lx.advance();
                acc = acc / factor();
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

KElement parse_k_element(const FqPtr& f, std::string_view text) {
    Lexer lx(text);
    KParser p{lx, f};
    KElement v = p.expr();
    if (lx.tok != Tok::End) throw parse_error("trailing input after element", lx.tok_pos);
    return v;
}

SkewPoly parse_skew_poly(const FqPtr& f, std::string_view text) {
    Lexer lx(text);
    KParser kp{lx, f};
    SkewPoly acc = SkewPoly::zero(f);
    bool first = true;
    for (;;) {
        bool neg = false;
        if (lx.tok == Tok::Minus) {
            neg = true;
            lx.advance();
        } else if (lx.tok == Tok::Plus) {
            lx.advance();
        } else if (!first) {
            break;
        }
        first = false;

        KElement coeff = KElement::one(f);
        std::size_t deg = 0;
        if (lx.tok == Tok::Tau) {
            lx.advance();
            deg = 1;
        } else {
            coeff = kp.coefficient_product();
            if (lx.tok == Tok::Tau) {
                lx.advance();
                deg = 1;
            }
        }
        if (deg == 1 && lx.tok == Tok::Caret) {
            lx.advance();
            deg = static_cast<std::size_t>(lx.expect_uint());
        }
        if (neg) coeff = -coeff;
        acc = acc + SkewPoly::monomial(coeff, deg);
        if (lx.tok == Tok::End) break;
        if (lx.tok != Tok::Plus && lx.tok != Tok::Minus)
            throw parse_error("expected '+', '-' or end of twisted polynomial", lx.tok_pos);
    }
    if (lx.tok != Tok::End) throw parse_error("trailing input after twisted polynomial", lx.tok_pos);
    return acc;
}

TPoly parse_t_poly(const FqPtr& f, std::string_view text) {
    // same term structure with the variable t and F_q coefficients
    Lexer lx(text);
    std::vector<FqElem> coeffs;
    auto add = [&](std::size_t deg, const FqElem& c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, f->zero());
        coeffs[deg] = coeffs[deg] + c;
    };
    auto parse_fq_factor = [&]() -> FqElem {
        FqElem base = f->zero();
        if (lx.tok == Tok::Num) {
            if (lx.num >= f->p()) throw parse_error("coefficient out of range for F_p", lx.tok_pos);
            base = f->from_int(static_cast<long>(lx.num));
            lx.advance();
        } else if (lx.tok == Tok::VarG) {
            if (f->m() < 2) throw parse_error("g is only defined for extension fields", lx.tok_pos);
            base = f->gen();
            lx.advance();
        } else {
            throw parse_error("expected an F_q coefficient", lx.tok_pos);
        }
        if (lx.tok == Tok::Caret) {
            lx.advance();
            base = base.pow(lx.expect_uint());
        }
        return base;
    };
    bool first = true;
    for (;;) {
        bool neg = false;
        if (lx.tok == Tok::Minus) {
            neg = true;
            lx.advance();
        } else if (lx.tok == Tok::Plus) {
            lx.advance();
        } else if (!first) {
            break;
        }
        first = false;

        FqElem coeff = f->one();
        bool have_coeff = false;
        while (lx.tok == Tok::Num || lx.tok == Tok::VarG) {
            coeff = coeff * parse_fq_factor();
            have_coeff = true;
            if (lx.tok == Tok::Star) {
                lx.advance();
                continue;
            }
            break;
        }
        std::size_t deg = 0;
        if (lx.tok == Tok::VarSmallT) {
            lx.advance();
            deg = 1;
            if (lx.tok == Tok::Caret) {
                lx.advance();
                deg = static_cast<std::size_t>(lx.expect_uint());
            }
        } else if (!have_coeff) {
            throw parse_error("expected a term in t", lx.tok_pos);
        }
        add(deg, neg ? -coeff : coeff);
        if (lx.tok == Tok::End) break;
        if (lx.tok != Tok::Plus && lx.tok != Tok::Minus)
            throw parse_error("expected '+', '-' or end of polynomial", lx.tok_pos);
    }
    if (lx.tok != Tok::End) throw parse_error("trailing input after polynomial", lx.tok_pos);
    return TPoly(f, std::move(coeffs));
}

std::vector<std::uint32_t> parse_fp_poly(std::uint32_t p, std::string_view text) {
    Lexer lx(text);
    std::vector<std::uint32_t> coeffs;
    auto add = [&](std::size_t deg, std::uint32_t c) {
        if (coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
        coeffs[deg] = (coeffs[deg] + c) % p;
    };
    bool first = true;
    for (;;) {
        bool neg = false;
        if (lx.tok == Tok::Minus) {
            neg = true;
            lx.advance();
        } else if (lx.tok == Tok::Plus) {
            lx.advance();
        } else if (!first) {
            break;
        }
        first = false;

        std::uint32_t coeff = 1;
        bool have_coeff = false;
        if (lx.tok == Tok::Num) {
            if (lx.num >= p) throw parse_error("coefficient out of range for F_p", lx.tok_pos);
            coeff = static_cast<std::uint32_t>(lx.num);
            have_coeff = true;
            lx.advance();
            if (lx.tok == Tok::Star) lx.advance();
        }
        std::size_t deg = 0;
        if (lx.tok == Tok::VarG) {
            lx.advance();
            deg = 1;
            if (lx.tok == Tok::Caret) {
                lx.advance();
                deg = static_cast<std::size_t>(lx.expect_uint());
            }
        } else if (!have_coeff) {
            throw parse_error("expected a term in g", lx.tok_pos);
        }
        add(deg, neg ? (p - coeff) % p : coeff);
        if (lx.tok == Tok::End) break;
        if (lx.tok != Tok::Plus && lx.tok != Tok::Minus)
            throw parse_error("expected '+', '-' or end of polynomial", lx.tok_pos);
    }
    if (lx.tok != Tok::End) throw parse_error("trailing input after polynomial", lx.tok_pos);
    return coeffs;
}

} // namespace drx
