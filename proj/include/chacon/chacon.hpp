#pragma once

#include "chacon/digit_stream.hpp"
#include "chacon/odometer.hpp"
#include "chacon/oracle.hpp"
#include "chacon/poly_family.hpp"
#include "chacon/rational.hpp"
#include "chacon/serialize.hpp"
#include "chacon/sparse_poly.hpp"
#include "chacon/substitution.hpp"
#include "chacon/triangle.hpp"
#include "chacon/verify.hpp"
