// Trailing-edge debounce: the callback runs once, `delayMs` after the last
// call. Keeps slider drags from turning into a request per pixel.

export type Debounced<A extends unknown[]> = {
  (...args: A): void;
  cancel(): void;
};

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;

  const debounced = (...args: A) => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, delayMs);
  };
  debounced.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
  };
  return debounced;
}
