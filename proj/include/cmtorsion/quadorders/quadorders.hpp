#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmtorsion/arith/zpoly.hpp"

namespace cmt {

// Imaginary quadratic order of discriminant D = f^2 D0.
struct QuadOrder {
    long D = 0;
    long f = 1;
    long D0 = 0;
    int h = 0;
    int w = 2;

    friend bool operator==(const QuadOrder& a, const QuadOrder& b) { return a.D == b.D; }
    friend bool operator<(const QuadOrder& a, const QuadOrder& b) { return a.D > b.D; }  // by |D|
};

struct ClassPolynomial {
    QuadOrder order;
    ZPoly poly;          // monic, degree h
    long precision = 0;  // decimal digits of the successful evaluation
};

class BoundUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_discriminant(long D);
bool is_fundamental(long D);
// Builds the order with discriminant D, computing h by counting reduced forms.
QuadOrder make_order(long D);

struct ReducedForm {
    long a, b, c;
};
// Reduced primitive forms (a, b, c) of discriminant D.
std::vector<ReducedForm> reduced_forms(long D);
int class_number(long D);
int unit_count(long D);

int legendre(const BigInt& a, long p);
// Divisibility test for an odd prime p not dividing D; true when p | D.
bool prime_allowed(const QuadOrder& order, long p, long d);

// Table h -> max |D0| over fundamental discriminants.
using BoundTable = std::map<int, long>;
BoundTable parse_bound_table(const std::string& text);
const BoundTable& default_bound_table();
// All orders with class number in h_allowed, sorted by |D|. ceiling_scale
// multiplies every bound (values > 1 only enlarge the search).
std::vector<QuadOrder> enumerate_orders(const std::set<int>& h_allowed, const BoundTable& table = default_bound_table(),
                                        long ceiling_scale = 1);

struct ClassPolyOptions {
    long start_digits = 0;          // 0 selects the size-based default
    long precision_ceiling = 10000;  // decimal digits
};
ClassPolynomial class_polynomial(const QuadOrder& order, const ClassPolyOptions& opt = {});

std::string to_string(const QuadOrder& o);

}  // namespace cmt
