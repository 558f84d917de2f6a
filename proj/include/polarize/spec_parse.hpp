#pragma once

#include <cctype>
#include <functional>
#include <string>
#include <vector>

#include "polarize/constructors.hpp"
#include "polarize/group_table.hpp"
#include "polarize/unitary_group.hpp"

namespace polarize {

/// Parsed algebra spec:
///   R | C | H | M(n, <spec>) | Clifford(p,q) | GroupAlgebra(<path>) |
///   Sum(<spec>, <spec>, ...)
struct AlgebraDesc {
  enum class Kind { R, C, H, Matrix, Clifford, GroupAlgebra, Sum };
  Kind kind = Kind::R;
  std::size_t n = 0;          // Matrix block count
  unsigned p = 0, q = 0;      // Clifford signature
  std::string path;           // GroupAlgebra table file
  std::vector<AlgebraDesc> parts;  // Matrix base (one entry) or Sum parts
  std::string text;           // canonical spec string
};

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(const std::string& s) : s_(s) {}

  AlgebraDesc parse() {
    AlgebraDesc d = parse_spec(1);
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after spec");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("algebra spec parse error at position " + std::to_string(pos_) + ": " +
                          msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an algebra name");
    return s_.substr(start, pos_ - start);
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  std::string path_until_paren() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ')') ++pos_;
    if (pos_ == s_.size()) fail("unterminated path");
    std::string p = s_.substr(start, pos_ - start);
    // Trim surrounding whitespace.
    while (!p.empty() && std::isspace(static_cast<unsigned char>(p.front()))) p.erase(p.begin());
    while (!p.empty() && std::isspace(static_cast<unsigned char>(p.back()))) p.pop_back();
    if (p.empty()) fail("empty group table path");
    return p;
  }

  AlgebraDesc parse_spec(int depth) {
    if (depth > 3) fail("nesting depth exceeds 3");
    AlgebraDesc d;
    const std::string name = ident();
    if (name == "R") {
      d.kind = AlgebraDesc::Kind::R;
      d.text = "R";
    } else if (name == "C") {
      d.kind = AlgebraDesc::Kind::C;
      d.text = "C";
    } else if (name == "H") {
      d.kind = AlgebraDesc::Kind::H;
      d.text = "H";
    } else if (name == "M") {
      expect('(');
      const long long n = integer();
      if (n < 1) fail("matrix size must be positive");
      expect(',');
      AlgebraDesc base = parse_spec(depth + 1);
      expect(')');
      d.kind = AlgebraDesc::Kind::Matrix;
      d.n = static_cast<std::size_t>(n);
      d.text = "M(" + std::to_string(n) + "," + base.text + ")";
      d.parts.push_back(std::move(base));
    } else if (name == "Clifford") {
      expect('(');
      const long long p = integer();
      expect(',');
      const long long q = integer();
      expect(')');
      if (p < 0 || q < 0 || p + q > 12) fail("Clifford signature must satisfy p+q <= 12");
      d.kind = AlgebraDesc::Kind::Clifford;
      d.p = static_cast<unsigned>(p);
      d.q = static_cast<unsigned>(q);
      d.text = "Clifford(" + std::to_string(p) + "," + std::to_string(q) + ")";
    } else if (name == "GroupAlgebra") {
      expect('(');
      d.path = path_until_paren();
      expect(')');
      d.kind = AlgebraDesc::Kind::GroupAlgebra;
      d.text = "GroupAlgebra(" + d.path + ")";
    } else if (name == "Sum") {
      expect('(');
      d.kind = AlgebraDesc::Kind::Sum;
      d.parts.push_back(parse_spec(depth + 1));
      while (consume(',')) d.parts.push_back(parse_spec(depth + 1));
      expect(')');
      d.text = "Sum(";
      for (std::size_t i = 0; i < d.parts.size(); ++i)
        d.text += (i ? "," : "") + d.parts[i].text;
      d.text += ")";
    } else {
      fail("unknown algebra '" + name + "'");
    }
    return d;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline AlgebraDesc parse_algebra_desc(const std::string& s) {
  return detail::SpecParser(s).parse();
}

/// Loader callback resolving GroupAlgebra(<path>) references.
using GroupTableLoader = std::function<GroupTable(const std::string&)>;

template <typename S>
AlgebraPtr<S> build_algebra(const AlgebraDesc& desc, const GroupTableLoader& loader,
                            double eps = kDefaultEpsilon,
                            CheckMode checks = CheckMode::automatic) {
  switch (desc.kind) {
    case AlgebraDesc::Kind::R:
      return make_division_algebra<S>(DivisionAlgebra::R, eps);
    case AlgebraDesc::Kind::C:
      return make_division_algebra<S>(DivisionAlgebra::C, eps);
    case AlgebraDesc::Kind::H:
      return make_division_algebra<S>(DivisionAlgebra::H, eps);
    case AlgebraDesc::Kind::Matrix:
      return make_matrix_algebra<S>(build_algebra<S>(desc.parts[0], loader, eps, checks), desc.n,
                                    checks);
    case AlgebraDesc::Kind::Clifford:
      return make_clifford<S>({desc.p, desc.q}, eps, checks);
    case AlgebraDesc::Kind::GroupAlgebra: {
      if (!loader) throw ValidationError("no group table loader configured");
      return make_group_algebra<S>(loader(desc.path), eps);
    }
    case AlgebraDesc::Kind::Sum: {
      std::vector<AlgebraPtr<S>> parts;
      for (const auto& part : desc.parts)
        parts.push_back(build_algebra<S>(part, loader, eps, checks));
      return make_direct_sum<S>(parts, checks);
    }
  }
  throw ValidationError("unreachable algebra kind");
}

/// Parsed catalog group id:
///   pm-one | roots:{N} | quaternion:2A4|2S4|2A5 | quaternion:2D_2n:{n} |
///   signed-group | clifford | delta-gh:{n} | product
struct GroupId {
  enum class Kind {
    PmOne,
    Roots,
    Quat2A4,
    Quat2S4,
    Quat2A5,
    Quat2D2n,
    SignedGroup,
    CliffordG,
    DeltaGH,
    Product,
  };
  Kind kind = Kind::PmOne;
  std::size_t n = 0;

  std::string to_string() const {
    switch (kind) {
      case Kind::PmOne: return "pm-one";
      case Kind::Roots: return "roots:" + std::to_string(n);
      case Kind::Quat2A4: return "quaternion:2A4";
      case Kind::Quat2S4: return "quaternion:2S4";
      case Kind::Quat2A5: return "quaternion:2A5";
      case Kind::Quat2D2n: return "quaternion:2D_2n:" + std::to_string(n);
      case Kind::SignedGroup: return "signed-group";
      case Kind::CliffordG: return "clifford";
      case Kind::DeltaGH: return "delta-gh:" + std::to_string(n);
      case Kind::Product: return "product";
    }
    return "?";
  }
};

inline GroupId parse_group_id(const std::string& s) {
  auto suffix_int = [&](const std::string& prefix) -> long long {
    const std::string tail = s.substr(prefix.size());
    if (tail.empty()) throw LookupError("group id '" + s + "' needs a numeric suffix");
    try {
      return std::stoll(tail);
    } catch (const std::exception&) {
      throw LookupError("group id '" + s + "' has a malformed numeric suffix");
    }
  };
  GroupId g;
  if (s == "pm-one") {
    g.kind = GroupId::Kind::PmOne;
  } else if (s.rfind("roots:", 0) == 0) {
    g.kind = GroupId::Kind::Roots;
    g.n = static_cast<std::size_t>(suffix_int("roots:"));
  } else if (s == "quaternion:2A4") {
    g.kind = GroupId::Kind::Quat2A4;
  } else if (s == "quaternion:2S4") {
    g.kind = GroupId::Kind::Quat2S4;
  } else if (s == "quaternion:2A5") {
    g.kind = GroupId::Kind::Quat2A5;
  } else if (s.rfind("quaternion:2D_2n:", 0) == 0) {
    g.kind = GroupId::Kind::Quat2D2n;
    g.n = static_cast<std::size_t>(suffix_int("quaternion:2D_2n:"));
  } else if (s == "signed-group") {
    g.kind = GroupId::Kind::SignedGroup;
  } else if (s == "clifford") {
    g.kind = GroupId::Kind::CliffordG;
  } else if (s.rfind("delta-gh:", 0) == 0) {
    g.kind = GroupId::Kind::DeltaGH;
    g.n = static_cast<std::size_t>(suffix_int("delta-gh:"));
  } else if (s == "product") {
    g.kind = GroupId::Kind::Product;
  } else {
    throw LookupError("unknown group id '" + s + "'");
  }
  return g;
}

/// Default polarizing group per algebra kind.
inline GroupId default_group_id(const AlgebraDesc& desc) {
  GroupId g;
  switch (desc.kind) {
    case AlgebraDesc::Kind::R: g.kind = GroupId::Kind::PmOne; break;
    case AlgebraDesc::Kind::C: g.kind = GroupId::Kind::Roots; g.n = 4; break;
    case AlgebraDesc::Kind::H: g.kind = GroupId::Kind::Quat2D2n; g.n = 2; break;
    case AlgebraDesc::Kind::Matrix: g.kind = GroupId::Kind::DeltaGH; g.n = desc.n; break;
    case AlgebraDesc::Kind::Clifford: g.kind = GroupId::Kind::CliffordG; break;
    case AlgebraDesc::Kind::GroupAlgebra: g.kind = GroupId::Kind::SignedGroup; break;
    case AlgebraDesc::Kind::Sum: g.kind = GroupId::Kind::Product; break;
  }
  return g;
}

/// True when the group's coordinates cannot be expressed exactly as
/// rationals (the catalog entries with sqrt(2), sqrt(5) or non-quarter
/// angles).
inline bool group_requires_float(const AlgebraDesc& desc, const GroupId& gid) {
  switch (gid.kind) {
    case GroupId::Kind::Roots:
      return !(gid.n == 1 || gid.n == 2 || gid.n == 4);
    case GroupId::Kind::Quat2S4:
    case GroupId::Kind::Quat2A5:
      return true;
    case GroupId::Kind::Quat2D2n:
      return gid.n != 2;
    case GroupId::Kind::DeltaGH:
      return !desc.parts.empty() &&
             group_requires_float(desc.parts[0], default_group_id(desc.parts[0]));
    case GroupId::Kind::Product: {
      for (const auto& part : desc.parts)
        if (group_requires_float(part, default_group_id(part))) return true;
      return false;
    }
    default:
      return false;
  }
}

/// Builds the catalog group named by `gid` inside `algebra` (which must have
/// been built from `desc`).
template <typename S>
UnitaryGroup<S> build_group(const AlgebraPtr<S>& algebra, const AlgebraDesc& desc,
                            const GroupId& gid) {
  switch (gid.kind) {
    case GroupId::Kind::PmOne:
      return close_group<S>({-(algebra->unit())}, 2, "pm-one");
    case GroupId::Kind::Roots:
      return roots_of_unity_group(algebra, gid.n);
    case GroupId::Kind::Quat2A4:
      return quaternion_catalog(algebra, QuaternionGroupName::BinaryTetrahedral);
    case GroupId::Kind::Quat2S4:
      return quaternion_catalog(algebra, QuaternionGroupName::BinaryOctahedral);
    case GroupId::Kind::Quat2A5:
      return quaternion_catalog(algebra, QuaternionGroupName::BinaryIcosahedral);
    case GroupId::Kind::Quat2D2n:
      return quaternion_catalog(algebra, QuaternionGroupName::BinaryDihedral,
                                static_cast<unsigned>(gid.n));
    case GroupId::Kind::SignedGroup:
      return signed_group_algebra_group(algebra);
    case GroupId::Kind::CliffordG:
      return clifford_group(algebra);
    case GroupId::Kind::DeltaGH: {
      const auto& prov = algebra->provenance();
      if (!prov || prov->kind != Provenance<S>::Kind::MatrixOver)
        throw PreconditionError("delta-gh:{n} requires a matrix algebra M(n, base)");
      if (prov->n != gid.n)
        throw PreconditionError("delta-gh:" + std::to_string(gid.n) +
                                " does not match the algebra's block count");
      const UnitaryGroup<S> base_group =
          build_group(prov->base, desc.parts.at(0), default_group_id(desc.parts.at(0)));
      return delta_gh_group(algebra, base_group);
    }
    case GroupId::Kind::Product: {
      const auto& prov = algebra->provenance();
      if (!prov || prov->kind != Provenance<S>::Kind::DirectSum)
        throw PreconditionError("product group requires a *-direct sum");
      std::vector<UnitaryGroup<S>> part_groups;
      for (std::size_t p = 0; p < prov->parts.size(); ++p)
        part_groups.push_back(
            build_group(prov->parts[p], desc.parts.at(p), default_group_id(desc.parts.at(p))));
      return direct_sum_product_group(algebra, part_groups);
    }
  }
  throw LookupError("unreachable group id kind");
}

/// Catalog group ids applicable to an algebra, as shown by `groups`.
inline std::vector<GroupId> catalog_group_ids(const AlgebraDesc& desc) {
  std::vector<GroupId> out;
  switch (desc.kind) {
    case AlgebraDesc::Kind::R:
      out.push_back({GroupId::Kind::PmOne, 0});
      break;
    case AlgebraDesc::Kind::C:
      for (std::size_t n = 1; n <= 8; ++n) out.push_back({GroupId::Kind::Roots, n});
      break;
    case AlgebraDesc::Kind::H:
      out.push_back({GroupId::Kind::Quat2A4, 0});
      out.push_back({GroupId::Kind::Quat2S4, 0});
      out.push_back({GroupId::Kind::Quat2A5, 0});
      for (std::size_t n = 2; n <= 4; ++n) out.push_back({GroupId::Kind::Quat2D2n, n});
      break;
    case AlgebraDesc::Kind::Matrix:
      out.push_back({GroupId::Kind::DeltaGH, desc.n});
      break;
    case AlgebraDesc::Kind::Clifford:
      out.push_back({GroupId::Kind::CliffordG, 0});
      break;
    case AlgebraDesc::Kind::GroupAlgebra:
      out.push_back({GroupId::Kind::SignedGroup, 0});
      break;
    case AlgebraDesc::Kind::Sum:
      out.push_back({GroupId::Kind::Product, 0});
      break;
  }
  return out;
}

}  // namespace polarize
