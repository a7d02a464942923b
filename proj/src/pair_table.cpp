#include "mptq/pair_table.hpp"

#include <algorithm>
#include <unordered_map>

namespace mptq {

namespace {

template <typename T, typename Hash, typename Sym, typename Anti>
PairTable build_table(std::span<const T> universe, Sym sym_op, Anti anti_op)
{
    PairTable t;
    const std::size_t m = universe.size();
    t.size = m;
    t.sym.resize(m * m);
    t.anti.resize(m * m);
    t.anti_t.resize(m * m);

    std::unordered_map<T, std::uint32_t, Hash> sym_ids, anti_ids;
    auto intern = [](auto& ids, T value) {
        auto [it, inserted] = ids.try_emplace(std::move(value), static_cast<std::uint32_t>(ids.size()));
        return it->second;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j >= i) {
                std::uint32_t id = intern(sym_ids, sym_op(universe[i], universe[j]));
                t.sym[i * m + j] = id;
                t.sym[j * m + i] = id;
            }
            std::uint32_t id = intern(anti_ids, anti_op(universe[i], universe[j]));
            t.anti[i * m + j] = id;
            t.anti_t[j * m + i] = id;
        }
    }
    t.sym_classes = static_cast<std::uint32_t>(sym_ids.size());
    t.anti_classes = static_cast<std::uint32_t>(anti_ids.size());
    return t;
}

}  // namespace

PairTable multiplicative_pair_table(std::span<const FactoredNonzero> universe)
{
    return build_table<FactoredNonzero, FactoredHash>(
        universe, [](const FactoredNonzero& a, const FactoredNonzero& b) { return a * b; },
        [](const FactoredNonzero& a, const FactoredNonzero& b) { return a / b; });
}

PairTable additive_pair_table(std::span<const std::int64_t> universe)
{
    return build_table<std::int64_t, std::hash<std::int64_t>>(
        universe, [](std::int64_t a, std::int64_t b) { return a + b; },
        [](std::int64_t a, std::int64_t b) { return a - b; });
}

PairCounters::PairCounters(const PairTable& table)
    : table_(&table), sym_count_(table.sym_classes, 0), anti_count_(table.anti_classes, 0)
{
    members_.reserve(table.size);
}

void PairCounters::add(std::uint32_t i)
{
    const std::size_t m = table_->size;
    const std::uint32_t* srow = table_->sym.data() + i * m;
    const std::uint32_t* arow = table_->anti.data() + i * m;
    const std::uint32_t* acol = table_->anti_t.data() + i * m;
    std::uint32_t* sc = sym_count_.data();
    std::uint32_t* ac = anti_count_.data();
    for (std::uint32_t j : members_) {
        sym_distinct_ += (sc[srow[j]]++ == 0);
        anti_distinct_ += (ac[arow[j]]++ == 0);
        anti_distinct_ += (ac[acol[j]]++ == 0);
    }
    sym_distinct_ += (sc[srow[i]]++ == 0);
    anti_distinct_ += (ac[arow[i]]++ == 0);
    members_.push_back(i);
}

void PairCounters::remove_last()
{
    const std::uint32_t i = members_.back();
    members_.pop_back();
    const std::size_t m = table_->size;
    const std::uint32_t* srow = table_->sym.data() + i * m;
    const std::uint32_t* arow = table_->anti.data() + i * m;
    const std::uint32_t* acol = table_->anti_t.data() + i * m;
    std::uint32_t* sc = sym_count_.data();
    std::uint32_t* ac = anti_count_.data();
    for (std::uint32_t j : members_) {
        sym_distinct_ -= (--sc[srow[j]] == 0);
        anti_distinct_ -= (--ac[arow[j]] == 0);
        anti_distinct_ -= (--ac[acol[j]] == 0);
    }
    sym_distinct_ -= (--sc[srow[i]] == 0);
    anti_distinct_ -= (--ac[arow[i]] == 0);
}

DistinctCounter::DistinctCounter(const PairTable& table)
    : table_(&table), sym_stamp_(table.sym_classes, 0), anti_stamp_(table.anti_classes, 0)
{
}

std::pair<std::uint32_t, std::uint32_t> DistinctCounter::count(std::span<const std::uint32_t> members)
{
    if (++generation_ == 0) {
        std::fill(sym_stamp_.begin(), sym_stamp_.end(), 0);
        std::fill(anti_stamp_.begin(), anti_stamp_.end(), 0);
        generation_ = 1;
    }
    const std::size_t m = table_->size;
    std::uint32_t syms = 0, antis = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
        const std::uint32_t i = members[a];
        const std::uint32_t* srow = table_->sym.data() + i * m;
        const std::uint32_t* arow = table_->anti.data() + i * m;
        for (std::size_t b = 0; b < members.size(); ++b) {
            const std::uint32_t j = members[b];
            if (b >= a && sym_stamp_[srow[j]] != generation_) {
                sym_stamp_[srow[j]] = generation_;
                ++syms;
            }
            if (anti_stamp_[arow[j]] != generation_) {
                anti_stamp_[arow[j]] = generation_;
                ++antis;
            }
        }
    }
    return {syms, antis};
}

}  // namespace mptq
