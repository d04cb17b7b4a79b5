#include "dagtrails/order.hpp"

namespace dagtrails {

TrailKey key_of(const TrailDecomposition& dec) {
    TrailKey k;
    k.conv_total = dec.converging_count();
    for (const ActivationWitness& w : dec.witnesses) {
        if (!w.in_z()) ++k.conv_outside_z;
        k.descent_total += w.descent_length();
    }
    for (const Trail& s : dec.subtrails)
        k.subtrail_total += s.node_count() - 2;
    return k;
}

TrailKey trail_key(const Dag& d, const Trail& t, const NodeSet& z) {
    return key_of(decompose(d, t, z));
}

OrderResult compare(const TrailKey& a, const TrailKey& b) {
    auto va = a.to_array(), vb = b.to_array();
    if (va < vb) return OrderResult::less;
    if (vb < va) return OrderResult::greater;
    return OrderResult::incomparable;
}

MinimalTrails minimal_trails(const Dag& d, const NodeSet& x, const NodeSet& y,
                             const NodeSet& z) {
    MinimalTrails out;
    for (const Trail& t : trails_xyz(d, x, y, z)) {
        TrailKey k = trail_key(d, t, z);
        if (!out.key || compare(k, *out.key) == OrderResult::less) {
            out.key = k;
            out.trails.clear();
        }
        if (k == *out.key) out.trails.push_back(t);
    }
    return out;
}

} // namespace dagtrails
