const BASE = 100;
let factor = 2;
function scaled(x) {
  return BASE + x * factor;
}
log(scaled(5));
factor = 3;
log(scaled(5));
{
  const BASE = 1;
  log(BASE);
}
log(BASE);
