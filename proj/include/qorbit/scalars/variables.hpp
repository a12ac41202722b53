#pragma once

#include <cctype>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "qorbit/error.hpp"

namespace qorbit {

using VarId = std::uint16_t;

/// Process-wide table of formal parameters.
///
/// Identifiers are handed out in order of first use; that order is the
/// variable order of the graded-lexicographic monomial order, so a
/// computation that declares its alphabet up front gets reproducible
/// canonical forms.
class VariableTable {
 public:
  static VariableTable& instance() {
    static VariableTable table;
    return table;
  }

  VarId intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
    if (!valid_name(name)) throw DomainError("invalid parameter name '" + std::string(name) + "'");
    if (names_.size() >= 0xFFFF) throw DomainError("too many parameters");
    auto id = static_cast<VarId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(std::string(name), id);
    return id;
  }

  std::optional<VarId> find(std::string_view name) const {
    std::lock_guard lock(mutex_);
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(VarId id) const {
    std::lock_guard lock(mutex_);
    return names_.at(id);
  }

  static bool valid_name(std::string_view name) {
    if (name.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    for (char c : name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
  }

 private:
  VariableTable() = default;

  mutable std::mutex mutex_;
  std::deque<std::string> names_;  // deque: references stay valid on growth
  std::unordered_map<std::string, VarId> ids_;
};

inline VarId var(std::string_view name) { return VariableTable::instance().intern(name); }
inline const std::string& var_name(VarId id) { return VariableTable::instance().name(id); }

}  // namespace qorbit
