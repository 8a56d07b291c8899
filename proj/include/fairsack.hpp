#pragma once

#include "fairsack/construct.hpp"
#include "fairsack/decompose.hpp"
#include "fairsack/enumerate.hpp"
#include "fairsack/errors.hpp"
#include "fairsack/io.hpp"
#include "fairsack/rational_die.hpp"
#include "fairsack/sumset.hpp"
#include "fairsack/support_poly.hpp"
#include "fairsack/verify.hpp"
