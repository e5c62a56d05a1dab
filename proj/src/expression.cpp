#include "chromatic/expression.hpp"

#include <cctype>

namespace chromatic {

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool done()
    {
        skip_ws();
        return pos >= text.size();
    }
    char peek()
    {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool accept(char c)
    {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& what)
    {
        if (!accept(c))
            throw ParseError(pos, "expected " + what);
    }
    bool accept_word(std::string_view word)
    {
        skip_ws();
        if (text.substr(pos, word.size()) == word) {
            pos += word.size();
            return true;
        }
        return false;
    }
    int64_t integer()
    {
        skip_ws();
        size_t start = pos;
        bool negative = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            negative = text[pos] == '-';
            ++pos;
        }
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw ParseError(start, "expected an integer");
        int64_t value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + (text[pos] - '0');
            ++pos;
        }
        return negative ? -value : value;
    }
};

struct Parser {
    const RingDescriptor& ring;
    Cursor cur;

    int generator_index()
    {
        size_t at = cur.pos;
        if (cur.accept('p'))
            return 0;
        if (cur.accept('v')) {
            int64_t index = cur.integer();
            if (index < 0)
                throw ParseError(at, "generator index must be nonnegative");
            if (index > ring.truncation)
                throw TruncationExceeded("generator v" + std::to_string(index) +
                                         " exceeds truncation " +
                                         std::to_string(ring.truncation));
            return static_cast<int>(index);
        }
        throw ParseError(at, "expected a generator (p or v<i>)");
    }

    // True when the upcoming token starts an inversion prefix rather than
    // the module name.
    bool at_inversion()
    {
        Cursor probe = cur;
        probe.skip_ws();
        if (probe.pos >= probe.text.size())
            return false;
        char c = probe.text[probe.pos];
        return c == 'p' || c == 'v';
    }

    CyclicModule term()
    {
        CyclicModule m;
        if (cur.accept('S')) {
            cur.expect('^', "'^' after the suspension marker S");
            m.suspension = cur.integer();
        }
        while (at_inversion()) {
            size_t at = cur.pos;
            int index = generator_index();
            cur.expect('^', "'^-1' after an inverted generator");
            if (cur.integer() != -1)
                throw ParseError(at, "inverted generators need exponent -1");
            m.inverted.insert(index);
        }
        if (!cur.accept_word("BP") && !cur.accept_word("R"))
            throw ParseError(cur.pos, "expected the module name R (or BP)");
        if (cur.accept('/')) {
            if (cur.accept('I')) {
                int64_t k = cur.integer();
                if (k < 0)
                    throw ParseError(cur.pos, "ideal index must be nonnegative");
                if (k > ring.truncation + 1)
                    throw TruncationExceeded("ideal I" + std::to_string(k) +
                                             " exceeds truncation " +
                                             std::to_string(ring.truncation));
                for (int i = 0; i < k; ++i)
                    m.exponents[i] = 1;
            }
            else {
                cur.expect('(', "'(' after '/'");
                while (true) {
                    size_t at = cur.pos;
                    int index = generator_index();
                    int exponent = 1;
                    if (cur.accept('^')) {
                        if (cur.accept_word("inf")) {
                            exponent = kInfExponent;
                        }
                        else {
                            int64_t e = cur.integer();
                            if (e < 1)
                                throw ParseError(at,
                                                 "quotient exponents must be >= 1 or inf");
                            exponent = static_cast<int>(e);
                        }
                    }
                    if (m.exponents.count(index))
                        throw ParseError(at, "generator listed twice in the quotient");
                    m.exponents[index] = exponent;
                    if (cur.accept(')'))
                        break;
                    cur.expect(',', "',' or ')' in the quotient list");
                }
            }
        }
        return m;
    }
};

}  // namespace

ParseResult parse_expression(const RingDescriptor& ring, std::string_view text)
{
    Parser parser{ring, Cursor{text}};
    ParseResult result;
    std::vector<CyclicModule> raws;
    std::vector<std::string> rendered;

    if (parser.cur.peek() == '0') {
        parser.cur.accept('0');
        if (!parser.cur.done())
            throw ParseError(parser.cur.pos, "unexpected input after the zero module");
        result.module = zero_module();
        return result;
    }

    while (true) {
        CyclicModule raw = parser.term();
        rendered.push_back(to_text(raw));
        raws.push_back(std::move(raw));
        if (parser.cur.done())
            break;
        parser.cur.expect('+', "'+' between summands");
    }

    std::vector<CyclicModule> kept;
    for (size_t i = 0; i < raws.size(); ++i) {
        if (auto m = normalize(ring, raws[i]))
            kept.push_back(std::move(*m));
        else
            result.warnings.push_back("summand " + rendered[i] +
                                      " is zero: an inverted generator acts torsionly");
    }
    result.module = module_sum(ring, std::move(kept));
    return result;
}

}  // namespace chromatic
