#ifndef DAGTRAILS_ORDER_HPP
#define DAGTRAILS_ORDER_HPP

#include <array>
#include <optional>

#include "dagtrails/trails.hpp"

namespace dagtrails {

/// The 4-component vector inducing the trail order: converging nodes
/// outside Z, converging nodes total, total descendant-path length,
/// total subtrail length. Compared lexicographically.
struct TrailKey {
    int conv_outside_z = 0;
    int conv_total = 0;
    int descent_total = 0;
    int subtrail_total = 0;

    std::array<int, 4> to_array() const {
        return {conv_outside_z, conv_total, descent_total, subtrail_total};
    }
    bool operator==(const TrailKey&) const = default;
};

enum class OrderResult { less, greater, incomparable };

TrailKey key_of(const TrailDecomposition& dec);
/// Throws not_activated when t is blocked by z.
TrailKey trail_key(const Dag& d, const Trail& t, const NodeSet& z);

/// Strict order induced by the key vector; equal keys are incomparable.
OrderResult compare(const TrailKey& a, const TrailKey& b);

/// All trails of TRAILS(X,Y|Z) achieving the lexicographically least key
/// (exactly the minimal elements of the order). Empty key and trail list
/// when the query is d-separated.
struct MinimalTrails {
    std::optional<TrailKey> key;
    std::vector<Trail> trails;
    bool empty() const { return trails.empty(); }
};

MinimalTrails minimal_trails(const Dag& d, const NodeSet& x, const NodeSet& y,
                             const NodeSet& z);

} // namespace dagtrails

#endif
