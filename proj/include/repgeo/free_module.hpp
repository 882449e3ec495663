#pragma once

#include <map>
#include <string>

#include "repgeo/group_ring.hpp"

namespace repgeo {

/// Element of the free right KF(Y)-module XKF(Y) = sum_k x_k KF(Y).
///
/// Read as an action-type equation w = 0. Component k holds u_k in
/// w = x_1 o u_1 + ... + x_n o u_n; zero components are never stored.
class FreeModuleElement {
public:
    using Components = std::map<int, GroupRingElement>;

    FreeModuleElement() = default;
    explicit FreeModuleElement(Field field) : field_(field) {}

    /// x_index o u
    static FreeModuleElement basis(int index, const GroupRingElement& u);

    Field field() const { return field_; }
    const Components& components() const { return components_; }
    bool is_zero() const { return components_.empty(); }
    GroupRingElement component(int index) const;
    int max_module_index() const;
    int max_generator() const;

    FreeModuleElement operator-() const;
    FreeModuleElement operator+(const FreeModuleElement& o) const;
    FreeModuleElement operator-(const FreeModuleElement& o) const;
    FreeModuleElement& operator+=(const FreeModuleElement& o);
    FreeModuleElement scaled(const Scalar& c) const;

    /// Right action w o u, componentwise: (x_k a) o u = x_k (a u).
    FreeModuleElement act(const GroupRingElement& u) const;

    bool operator==(const FreeModuleElement& o) const;

    /// e.g. `x1 o (y1 - 1) + x2 o (3*y2)`; `0` for zero.
    std::string to_string() const;

private:
    void check_same(Field other) const;
    void add_component(int index, const GroupRingElement& u);

    Field field_;
    Components components_;
};

inline FreeModuleElement module_action(const FreeModuleElement& w, const GroupRingElement& u) { return w.act(u); }

}  // namespace repgeo
