#include "repgeo/free_module.hpp"

#include <algorithm>

namespace repgeo {

FreeModuleElement FreeModuleElement::basis(int index, const GroupRingElement& u) {
    if (index < 1) throw AlgebraError("module generator index must be >= 1");
    FreeModuleElement w(u.field());
    w.add_component(index, u);
    return w;
}

void FreeModuleElement::check_same(Field other) const {
    if (!(field_ == other)) throw AlgebraError("field_mismatch", "field mismatch: " + field_.name() + " vs " + other.name());
}

void FreeModuleElement::add_component(int index, const GroupRingElement& u) {
    check_same(u.field());
    if (u.is_zero()) return;
    auto [it, inserted] = components_.try_emplace(index, u);
    if (!inserted) {
        it->second += u;
        if (it->second.is_zero()) components_.erase(it);
    }
}

GroupRingElement FreeModuleElement::component(int index) const {
    auto it = components_.find(index);
    return it == components_.end() ? GroupRingElement(field_) : it->second;
}

int FreeModuleElement::max_module_index() const {
    return components_.empty() ? 0 : components_.rbegin()->first;
}

int FreeModuleElement::max_generator() const {
    int m = 0;
    for (const auto& [k, u] : components_) m = std::max(m, u.max_generator());
    return m;
}

FreeModuleElement FreeModuleElement::operator-() const {
    FreeModuleElement r(field_);
    for (const auto& [k, u] : components_) r.components_.emplace(k, -u);
    return r;
}

FreeModuleElement& FreeModuleElement::operator+=(const FreeModuleElement& o) {
    check_same(o.field_);
    for (const auto& [k, u] : o.components_) add_component(k, u);
    return *this;
}

FreeModuleElement FreeModuleElement::operator+(const FreeModuleElement& o) const {
    FreeModuleElement r = *this;
    r += o;
    return r;
}

FreeModuleElement FreeModuleElement::operator-(const FreeModuleElement& o) const {
    return *this + (-o);
}

FreeModuleElement FreeModuleElement::scaled(const Scalar& c) const {
    check_same(c.field());
    FreeModuleElement r(field_);
    for (const auto& [k, u] : components_) r.add_component(k, u.scaled(c));
    return r;
}

FreeModuleElement FreeModuleElement::act(const GroupRingElement& u) const {
    check_same(u.field());
    FreeModuleElement r(field_);
    for (const auto& [k, a] : components_) r.add_component(k, a * u);
    return r;
}

bool FreeModuleElement::operator==(const FreeModuleElement& o) const {
    return field_ == o.field_ && components_ == o.components_;
}

std::string FreeModuleElement::to_string() const {
    if (components_.empty()) return "0";
    std::string out;
    for (const auto& [k, u] : components_) {
        if (!out.empty()) out += " + ";
        out += "x" + std::to_string(k) + " o (" + u.to_string() + ")";
    }
    return out;
}

}  // namespace repgeo
