#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfcheck {

/// An ordered list of variable names. The order is the term-order and
/// printing order for every polynomial built over the context.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names) : names_(std::move(names)) {
        for (size_t i = 0; i < names_.size(); ++i)
            for (size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("VarContext: duplicate variable name " + names_[i]);
    }

    size_t arity() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    long index_of(const std::string& n) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return static_cast<long>(i);
        return -1;
    }

    bool operator==(const VarContext& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using VarCtxPtr = std::shared_ptr<const VarContext>;

inline VarCtxPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VarContext>(std::move(names));
}

inline bool same_context(const VarCtxPtr& a, const VarCtxPtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace surfcheck
