#pragma once

#include "dioph/form.hpp"
#include "dioph/numfield.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dioph {

/// A point of P^n(k), always held in normal form: coordinates in the ring of
/// integers, no common prime-ideal factor, first nonzero coordinate equal to
/// its canonical associate.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  /// Normalizes; throws InvalidInput if all coordinates vanish.
  explicit ProjectivePoint(std::vector<FieldElement> coords);
  static ProjectivePoint from_integers(std::span<const std::int64_t> coords);
  static ProjectivePoint from_integers(std::initializer_list<std::int64_t> coords);
  static ProjectivePoint from_rationals(std::span<const mpq_class> coords);

  const BaseField& field() const { return field_; }
  int size() const { return static_cast<int>(coords_.size()); }
  int ambient_dim() const { return size() - 1; }
  const std::vector<FieldElement>& coords() const { return coords_; }
  const FieldElement& operator[](int i) const { return coords_[i]; }

  /// Integer coordinates of a point over Q.
  std::vector<mpz_class> integer_coords() const;
  std::vector<std::complex<long double>> complex_coords() const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const ProjectivePoint& x, const ProjectivePoint& y) {
    return x.field_ == y.field_ && x.coords_ == y.coords_;
  }

 private:
  void normalize();

  BaseField field_;
  std::vector<FieldElement> coords_;
};

/// Lexicographic order on normal-form coordinates.
bool lex_less(const ProjectivePoint& x, const ProjectivePoint& y);

struct ProjectivePointHash {
  std::size_t operator()(const ProjectivePoint& p) const { return p.hash(); }
};

struct DivisorComponent {
  HomogeneousForm form;
  int multiplicity = 1;
};

/// Effective divisor on P^n given by forms; forms are stored primitive.
class Divisor {
 public:
  Divisor() = default;
  Divisor(int ambient_dim, std::vector<DivisorComponent> components);
  static Divisor from_form(const HomogeneousForm& f);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<DivisorComponent>& components() const { return components_; }
  bool reduced() const;
  int degree() const;
  /// prod_j F_j^{m_j}
  HomogeneousForm product_form() const;

 private:
  int ambient_dim_ = 0;
  std::vector<DivisorComponent> components_;
};

/// Projective variety cut out by forms; empty means all of P^n.
struct Variety {
  int ambient_dim = 0;
  std::vector<HomogeneousForm> defining_forms;
  int dim() const { return ambient_dim - static_cast<int>(defining_forms.size()); }
  bool contains(const ProjectivePoint& x) const;
};

}  // namespace dioph
