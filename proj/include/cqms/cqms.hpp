#ifndef CQMS_CQMS_HPP
#define CQMS_CQMS_HPP

#include "cqms/error.hpp"
#include "cqms/linalg.hpp"
#include "cqms/groups.hpp"
#include "cqms/hopf_core.hpp"
#include "cqms/corep_pw.hpp"
#include "cqms/compress.hpp"
#include "cqms/numerical_radius.hpp"
#include "cqms/lipnorm.hpp"
#include "cqms/simplex.hpp"
#include "cqms/mk_distance.hpp"
#include "cqms/io.hpp"
#include "cqms/sweep.hpp"

#endif
