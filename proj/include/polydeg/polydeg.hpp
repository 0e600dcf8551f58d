#ifndef POLYDEG_POLYDEG_HPP
#define POLYDEG_POLYDEG_HPP

#include "error.hpp"
#include "coeff.hpp"
#include "poly.hpp"
#include "parse.hpp"
#include "worder.hpp"
#include "wapprox.hpp"
#include "autmap.hpp"
#include "tamecert.hpp"
#include "sured.hpp"
#include "io.hpp"
#include "harness.hpp"

#endif
