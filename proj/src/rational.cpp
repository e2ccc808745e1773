#include "inrc2/rational.hpp"

#include <charconv>
#include <cstdlib>

namespace inrc2 {

std::string Rational::to_fixed(int decimals) const {
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    const bool negative = num_ < 0;
    const __int128 magnitude = static_cast<__int128>(negative ? -num_ : num_) * scale;
    __int128 scaled = magnitude / den_;
    if ((magnitude % den_) * 2 >= den_) ++scaled;

    const auto whole = static_cast<std::int64_t>(scaled / scale);
    const auto frac = static_cast<std::int64_t>(scaled % scale);
    std::string out = negative && scaled != 0 ? "-" : "";
    out += std::to_string(whole);
    if (decimals > 0) {
        std::string digits = std::to_string(frac);
        out += '.';
        out.append(static_cast<std::size_t>(decimals) - digits.size(), '0');
        out += digits;
    }
    return out;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto read = [&](std::string_view part) {
        std::int64_t v = 0;
        const auto* first = part.data();
        const auto* last = part.data() + part.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || part.empty())
            throw std::invalid_argument("malformed rational '" + text + "'");
        return v;
    };
    const std::string_view view(text);
    const auto slash = view.find('/');
    if (slash == std::string_view::npos) return Rational(read(view));
    const std::int64_t den = read(view.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("malformed rational '" + text + "'");
    return Rational(read(view.substr(0, slash)), den);
}

}  // namespace inrc2
