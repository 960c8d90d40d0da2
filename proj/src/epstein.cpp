#include "latsum/epstein.hpp"

namespace latsum {

template class EpsteinZeta<double>;
template class EpsteinZeta<long double>;

}  // namespace latsum
