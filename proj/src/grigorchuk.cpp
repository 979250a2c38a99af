#include "torsionlab/grigorchuk.hpp"

#include <unordered_map>

#include "torsionlab/errors.hpp"

namespace torsionlab::grigorchuk {

namespace {

// Product of two letters from {1,b,c,d}, with '1' for the identity.
char bcd_mul(char x, char y) {
    if (x == '1') return y;
    if (y == '1') return x;
    if (x == y) return '1';
    // the three nontrivial letters form a Klein four-group
    if (x != 'b' && y != 'b') return 'b';
    if (x != 'c' && y != 'c') return 'c';
    return 'd';
}

void push_reduced(std::string& out, char x) {
    if (x == 'a') {
        if (!out.empty() && out.back() == 'a') {
            out.pop_back();
        } else {
            out.push_back('a');
        }
        return;
    }
    if (!out.empty() && out.back() != 'a') {
        const char m = bcd_mul(out.back(), x);
        out.pop_back();
        if (m != '1') push_reduced(out, m);
        return;
    }
    out.push_back(x);
}

// section letter of b/c/d at a vertex whose first letter is `side`
char section_letter(char x, int side) {
    switch (x) {
        case 'b': return side == 0 ? 'a' : 'c';
        case 'c': return side == 0 ? 'a' : 'd';
        case 'd': return side == 0 ? '1' : 'b';
        default: break;
    }
    throw ParseError(std::string("grigorchuk: bad letter '") + x + "'");
}

}  // namespace

std::string reduce(std::string_view w) {
    std::string out;
    out.reserve(w.size());
    for (char x : w) {
        if (x != 'a' && x != 'b' && x != 'c' && x != 'd')
            throw ParseError(std::string("grigorchuk: bad letter '") + x + "'");
        push_reduced(out, x);
    }
    return out;
}

Split split(std::string_view w) {
    Split s;
    std::string sec[2];
    for (int start = 0; start < 2; ++start) {
        int side = start;
        for (char x : w) {
            if (x == 'a') {
                side ^= 1;
                continue;
            }
            const char y = section_letter(x, side);
            if (y != '1') sec[start].push_back(y);
        }
        if (start == 0) s.swap = (side == 1);
    }
    s.left = reduce(sec[0]);
    s.right = reduce(sec[1]);
    return s;
}

bool is_identity(std::string_view w) {
    const std::string r = reduce(w);
    if (r.empty()) return true;
    if (r.size() == 1) return false;
    const Split s = split(r);
    if (s.swap) return false;
    return is_identity(s.left) && is_identity(s.right);
}

namespace {

std::string canonical_reduced(const std::string& r, std::unordered_map<std::string, std::string>& memo) {
    if (r.size() <= 1) return r.empty() ? std::string("e") : r;
    if (auto it = memo.find(r); it != memo.end()) return it->second;
    const Split s = split(r);
    const std::string l = canonical_reduced(s.left, memo);
    const std::string rr = canonical_reduced(s.right, memo);
    std::string key;
    if (!s.swap && l == "e" && rr == "e") {
        key = "e";
    } else if (s.swap && l == "e" && rr == "e") {
        key = "a";
    } else if (!s.swap && l == "a" && rr == "c") {
        key = "b";
    } else if (!s.swap && l == "a" && rr == "d") {
        key = "c";
    } else if (!s.swap && l == "e" && rr == "b") {
        key = "d";
    } else {
        key.reserve(l.size() + rr.size() + 4);
        key += '(';
        key += s.swap ? '1' : '0';
        key += l;
        key += ',';
        key += rr;
        key += ')';
    }
    if (memo.size() > 1'000'000) memo.clear();
    memo.emplace(r, key);
    return key;
}

}  // namespace

std::string canonical_key(std::string_view w) {
    thread_local std::unordered_map<std::string, std::string> memo;
    return canonical_reduced(reduce(w), memo);
}

std::string inverse(std::string_view w) {
    // every generator is an involution
    std::string r(w.rbegin(), w.rend());
    return reduce(r);
}

}  // namespace torsionlab::grigorchuk
