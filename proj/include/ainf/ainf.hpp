#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/cochains.hpp"
#include "ainf/commutator.hpp"
#include "ainf/complex.hpp"
#include "ainf/defrep.hpp"
#include "ainf/dga.hpp"
#include "ainf/homotopy_ops.hpp"
#include "ainf/io.hpp"
#include "ainf/maurer_cartan.hpp"
#include "ainf/nerve.hpp"
#include "ainf/product.hpp"
#include "ainf/random.hpp"
#include "ainf/tensor.hpp"
#include "ainf/transfer.hpp"
#include "ainf/twist.hpp"
#include "ainf/verify.hpp"
