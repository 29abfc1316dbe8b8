#include <algorithm>
#include <bit>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include "memory_view.hpp"

namespace qram {

namespace {

void check_width(int n) {
    if (n < 1 || n > 62) throw Error("address width must be in [1, 62], got " + std::to_string(n));
}

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

// Floyd's sampling of `count` distinct values below `range`.
std::vector<std::uint64_t> sample(std::uint64_t range, std::uint64_t count, std::mt19937_64& rng) {
    std::unordered_set<std::uint64_t> picked;
    std::vector<std::uint64_t> out;
    for (std::uint64_t j = range - count; j < range; ++j) {
        std::uniform_int_distribution<std::uint64_t> dist(0, j);
        const std::uint64_t t = dist(rng);
        const std::uint64_t v = picked.count(t) ? j : t;
        picked.insert(v);
        out.push_back(v);
    }
    return out;
}

}  // namespace

int MemorySpec::q() const {
    const auto size = static_cast<std::uint64_t>(ones.size());
    if (size == 0 || !std::has_single_bit(size))
        throw Error("memory holds " + std::to_string(size) + " ones, not a power of two");
    return std::countr_zero(size);
}

bool MemorySpec::contains(std::uint64_t address) const {
    return std::binary_search(ones.begin(), ones.end(), address);
}

MemorySpec make_memory(int n, std::vector<std::uint64_t> ones, bool exact_power) {
    check_width(n);
    std::sort(ones.begin(), ones.end());
    if (std::adjacent_find(ones.begin(), ones.end()) != ones.end())
        throw Error("duplicate address in memory");
    for (auto a : ones)
        if (a >= pow2(n)) throw Error("address " + std::to_string(a) + " exceeds " + std::to_string(n) + " bits");
    if (ones.empty()) throw Error("memory must hold at least one 1");
    MemorySpec m{n, std::move(ones)};
    if (exact_power) (void)m.q();
    return m;
}

MemorySpec random_memory(int n, int q, std::uint64_t seed) {
    check_width(n);
    if (q < 0 || q >= n) throw Error("random memory requires 0 <= q < n");
    if (q > 26) throw Error("memory too large to enumerate");
    std::mt19937_64 rng(seed);
    return make_memory(n, sample(pow2(n), pow2(q), rng));
}

MemorySpec worst_case_memory(int n, int q, int k, std::uint64_t seed) {
    check_width(n);
    if (q < 0 || q >= n) throw Error("worst-case memory requires 0 <= q < n");
    if (k < 1 || k >= n) throw Error("worst-case memory requires 1 <= k < n");
    if (q > 26 || k > 26) throw Error("memory too large to enumerate");
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> prefixes(pow2(k));
    std::iota(prefixes.begin(), prefixes.end(), std::uint64_t{0});
    std::shuffle(prefixes.begin(), prefixes.end(), rng);
    std::vector<std::uint64_t> ones;
    std::int64_t rank = 0;
    for (const auto& c : detail::worst_case_classes(n, q, k))
        for (std::int64_t g = 0; g < c.count; ++g, ++rank)
            for (auto s : sample(pow2(n - k), static_cast<std::uint64_t>(c.size), rng))
                ones.push_back((prefixes[static_cast<std::size_t>(rank)] << (n - k)) | s);
    return make_memory(n, std::move(ones));
}

MemorySpec complement(const MemorySpec& mem) {
    if (mem.n > 24) throw Error("memory too large to complement");
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < pow2(mem.n); ++a)
        if (!mem.contains(a)) out.push_back(a);
    return make_memory(mem.n, std::move(out), false);
}

std::string format_address(std::uint64_t address, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((address >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

MemorySpec parse_memory(std::string_view text, bool exact_power) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0, n = -1;
    std::vector<std::uint64_t> ones;
    auto fail = [&](const std::string& why) {
        throw Error("line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        if (line.empty()) continue;
        if (n < 0) {
            if (line.rfind("n=", 0) != 0) fail("expected header 'n=<int>'");
            try {
                std::size_t used = 0;
                n = std::stoi(line.substr(2), &used);
                if (used != line.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail("bad address width '" + line.substr(2) + "'");
            }
            if (n < 1 || n > 62) fail("address width must be in [1, 62]");
            continue;
        }
        if (static_cast<int>(line.size()) != n)
            fail("address '" + line + "' has length " + std::to_string(line.size()) + ", expected " +
                 std::to_string(n));
        std::uint64_t a = 0;
        for (char c : line) {
            if (c != '0' && c != '1') fail("address '" + line + "' is not binary");
            a = (a << 1) | static_cast<std::uint64_t>(c - '0');
        }
        ones.push_back(a);
    }
    if (n < 0) throw Error("line " + std::to_string(lineno) + ": missing header 'n=<int>'");
    try {
        return make_memory(n, std::move(ones), exact_power);
    } catch (const Error& e) {
        throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
}

std::string write_memory(const MemorySpec& mem) {
    std::string out = "n=" + std::to_string(mem.n) + "\n";
    for (auto a : mem.ones) out += format_address(a, mem.n) + "\n";
    return out;
}

namespace detail {

std::vector<TierClass> worst_case_classes(int n, int q, int k) {
    const std::int64_t groups = std::int64_t{1} << k;
    const std::int64_t total = std::int64_t{1} << q;
    const std::int64_t cap = std::int64_t{1} << (n - k);
    const std::int64_t big = q == 0 ? 1 : std::min(cap, (total >> 1) + 1);
    const std::int64_t rest = total - big, others = groups - 1;
    std::vector<TierClass> raw = {{big, 1}};
    if (others > 0) raw.push_back({rest / others + 1, rest % others}),
                    raw.push_back({rest / others, others - rest % others});
    std::stable_sort(raw.begin(), raw.end(),
                     [](const TierClass& a, const TierClass& b) { return a.size > b.size; });
    std::vector<TierClass> out;
    for (const auto& c : raw) {
        if (c.count == 0) continue;
        if (!out.empty() && out.back().size == c.size)
            out.back().count += c.count;
        else
            out.push_back(c);
    }
    return out;
}

MemoryView view_of(const MemorySpec& spec) {
    auto mem = std::make_shared<const MemorySpec>(spec);
    MemoryView v;
    v.n = mem->n;
    v.size = static_cast<std::int64_t>(mem->ones.size());
    v.address = [mem](std::int64_t j) { return mem->ones.at(static_cast<std::size_t>(j)); };
    v.contains = [mem](std::uint64_t a) { return mem->contains(a); };
    v.tiers = [mem](int k) {
        const int n = mem->n;
        if (k < 1 || k >= n || k > 24) throw Error("invalid tier split k=" + std::to_string(k));
        const std::size_t groups = std::size_t{1} << k;
        auto buckets = std::make_shared<std::vector<std::vector<std::uint64_t>>>(groups);
        for (auto a : mem->ones)
            (*buckets)[a >> (n - k)].push_back(a & ((std::uint64_t{1} << (n - k)) - 1));
        auto order = std::make_shared<std::vector<std::uint64_t>>(groups);
        std::iota(order->begin(), order->end(), std::uint64_t{0});
        std::stable_sort(order->begin(), order->end(), [&](std::uint64_t a, std::uint64_t b) {
            return (*buckets)[a].size() > (*buckets)[b].size();
        });
        TierProfile p;
        for (auto g : *order) {
            const auto size = static_cast<std::int64_t>((*buckets)[g].size());
            if (!p.classes.empty() && p.classes.back().size == size)
                ++p.classes.back().count;
            else
                p.classes.push_back({size, 1});
        }
        p.prefix = [order](std::int64_t r) { return (*order)[static_cast<std::size_t>(r)]; };
        p.suffix = [order, buckets](std::int64_t r, std::int64_t i) {
            return (*buckets)[(*order)[static_cast<std::size_t>(r)]][static_cast<std::size_t>(i)];
        };
        return p;
    };
    return v;
}

MemoryView worst_case_view(int n, int q, int k) {
    if (k < 1 || k >= n) throw Error("invalid tier split k=" + std::to_string(k));
    auto classes = std::make_shared<std::vector<TierClass>>(worst_case_classes(n, q, k));
    // Rank r holds the prefix r and suffixes 0 .. size-1.
    auto size_of = [classes](std::int64_t rank) {
        for (const auto& c : *classes) {
            if (rank < c.count) return c.size;
            rank -= c.count;
        }
        return std::int64_t{0};
    };
    MemoryView v;
    v.n = n;
    v.size = std::int64_t{1} << q;
    v.address = [classes, n, k](std::int64_t j) {
        std::int64_t rank = 0;
        for (const auto& c : *classes) {
            if (j < c.size * c.count) {
                rank += j / c.size;
                return (static_cast<std::uint64_t>(rank) << (n - k)) | static_cast<std::uint64_t>(j % c.size);
            }
            j -= c.size * c.count;
            rank += c.count;
        }
        throw Error("address index out of range");
    };
    v.contains = [size_of, n, k](std::uint64_t a) {
        const auto s = static_cast<std::int64_t>(a & ((std::uint64_t{1} << (n - k)) - 1));
        return s < size_of(static_cast<std::int64_t>(a >> (n - k)));
    };
    v.tiers = [classes, k](int kk) {
        if (kk != k) throw Error("synthetic memory was generated for k=" + std::to_string(k));
        TierProfile p;
        p.classes = *classes;
        p.prefix = [](std::int64_t r) { return static_cast<std::uint64_t>(r); };
        p.suffix = [](std::int64_t, std::int64_t i) { return static_cast<std::uint64_t>(i); };
        return p;
    };
    return v;
}

}  // namespace detail

}  // namespace qram
