#pragma once

#include <cstdint>
#include <string>

namespace mcsim {

// What function a photon currently serves in a cluster. Roles are metadata:
// identity is carried by the label alone, so a photon can change role (a leaf
// becoming the connector of a fusion) without becoming a different qubit.
enum class QubitRole : std::uint8_t { Root, Leaf, EprHalf, Connector };

inline const char* role_name(QubitRole r) {
  switch (r) {
    case QubitRole::Root: return "root";
    case QubitRole::Leaf: return "leaf";
    case QubitRole::EprHalf: return "epr";
    case QubitRole::Connector: return "connector";
  }
  return "?";
}

struct QubitId {
  std::uint32_t label = 0;
  QubitRole role = QubitRole::EprHalf;
  std::uint32_t birth = 0;  // creation step, weakly increasing with label

  friend bool operator==(const QubitId& a, const QubitId& b) { return a.label == b.label; }
  friend bool operator!=(const QubitId& a, const QubitId& b) { return a.label != b.label; }

  std::string to_string() const {
    return "q" + std::to_string(label) + "[" + role_name(role) + "@" + std::to_string(birth) + "]";
  }
};

// Issues fresh labels; one source per pipeline keeps labels unique and birth
// steps weakly increasing.
class QubitIdSource {
 public:
  QubitId fresh(QubitRole role, std::uint32_t birth) { return QubitId{next_++, role, birth}; }
  std::uint32_t peek() const { return next_; }

 private:
  std::uint32_t next_ = 0;
};

}  // namespace mcsim
