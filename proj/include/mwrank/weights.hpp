#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mw {

// Ordered variables with positive integer weights. Shared, immutable.
class WeightSystem {
public:
    WeightSystem(std::vector<int> weights, std::vector<std::string> names);
    static WeightSystem unit(std::vector<std::string> names);

    std::size_t size() const { return d_->weights.size(); }
    int weight(std::size_t i) const { return d_->weights[i]; }
    const std::string& name(std::size_t i) const { return d_->names[i]; }
    const std::vector<int>& weights() const { return d_->weights; }
    const std::vector<std::string>& names() const { return d_->names; }
    long total() const;
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const WeightSystem& o) const;
    bool operator!=(const WeightSystem& o) const { return !(*this == o); }
    std::string describe() const;

private:
    struct Data {
        std::vector<int> weights;
        std::vector<std::string> names;
    };
    std::shared_ptr<const Data> d_;
};

}  // namespace mw
