#include "rational.hpp"

#include <cctype>

#include "errors.hpp"

namespace qwalk {

std::string to_string(const Rational& q) {
    Rational canon(q);
    canon.canonicalize();
    if (canon.get_den() == 1) return canon.get_num().get_str();
    return canon.get_num().get_str() + "/" + canon.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) raise(ErrorCode::MalformedDocument, "empty rational literal");
    std::size_t pos = 0;
    auto scan_integer = [&](bool allow_sign) {
        std::size_t start = pos;
        if (allow_sign && pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0)
            raise(ErrorCode::MalformedDocument, "bad rational literal '" + text + "'");
        return text.substr(start, pos - start);
    };
    std::string num = scan_integer(true);
    std::string den = "1";
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = scan_integer(false);
    }
    if (pos != text.size())
        raise(ErrorCode::MalformedDocument, "bad rational literal '" + text + "'");
    mpz_class d(den);
    if (d == 0) raise(ErrorCode::MalformedDocument, "zero denominator in '" + text + "'");
    Rational out(mpz_class(num), d);
    out.canonicalize();
    return out;
}

Rational rational_pow(const Rational& base, long exponent) {
    if (exponent == 0) return Rational(1);
    bool negative = exponent < 0;
    unsigned long n = negative ? static_cast<unsigned long>(-exponent)
                               : static_cast<unsigned long>(exponent);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), n);
    out.canonicalize();
    if (negative) {
        if (is_zero(out)) raise(ErrorCode::DivisibilityFailure, "negative power of zero");
        out = 1 / out;
    }
    return out;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return Rational(0);
    Rational canon(q);
    canon.canonicalize();
    if (!mpz_perfect_square_p(canon.get_num_mpz_t()) ||
        !mpz_perfect_square_p(canon.get_den_mpz_t()))
        return std::nullopt;
    Rational root;
    mpz_sqrt(root.get_num_mpz_t(), canon.get_num_mpz_t());
    mpz_sqrt(root.get_den_mpz_t(), canon.get_den_mpz_t());
    root.canonicalize();
    return root;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonMonomialLeadingTerm: return "NonMonomialLeadingTerm";
        case ErrorCode::NonSquareLeadingTerm: return "NonSquareLeadingTerm";
        case ErrorCode::IndistinctLeadingTerms: return "IndistinctLeadingTerms";
        case ErrorCode::NonRationalLeadingCoefficient: return "NonRationalLeadingCoefficient";
        case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorCode::SelectorOutOfRange: return "SelectorOutOfRange";
        case ErrorCode::UnboundedSupport: return "UnboundedSupport";
        case ErrorCode::NotEliminable: return "NotEliminable";
        case ErrorCode::KernelNotCancelled: return "KernelNotCancelled";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::NullvectorCheckFailed: return "NullvectorCheckFailed";
        case ErrorCode::UnknownSetMismatch: return "UnknownSetMismatch";
        case ErrorCode::UnknownModel: return "UnknownModel";
        case ErrorCode::DegenerateRegime: return "DegenerateRegime";
        case ErrorCode::AllSystemsSingular: return "AllSystemsSingular";
        case ErrorCode::DivisibilityFailure: return "DivisibilityFailure";
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::UsageError: return "UsageError";
    }
    return "UnknownError";
}

}  // namespace qwalk
